"""N-sets as pointed functional graphs.

A finite N-set is a pointed set with a successor map ``x -> tx`` fixing
the base point. A finitely generated N-set may also contain free forward
chains ``r, tr, t^2 r, ...``; these are recorded by marking ``r`` as a
tail root (successor ``TAIL``) instead of listing the chain.
"""

from itertools import product
from math import lcm
from typing import NamedTuple

from .aset import FiniteASet
from .errors import NotClosed
from .monoid import cyclic_monoid, truncated_polynomial

TAIL = -1


class FunctionalNSet:
    __slots__ = ("succ", "name")

    def __init__(self, succ, name="X", check=True):
        self.succ = tuple(int(v) for v in succ)
        self.name = name
        if check:
            n = len(self.succ)
            if n == 0 or self.succ[0] != 0:
                raise ValueError("succ(base) must be base")
            if any(not 0 <= v < n for v in self.succ):
                raise ValueError("successor out of range")

    @property
    def size(self):
        return len(self.succ) - 1

    @property
    def tails(self):
        return frozenset()

    def __eq__(self, other):
        return type(other) is type(self) and self.succ == other.succ

    def __hash__(self):
        return hash(self.succ)

    def __repr__(self):
        return f"FunctionalNSet({self.name!r}, {list(self.succ)})"


class FgNSet:
    """Finite core plus free tails; ``succ[r] == TAIL`` marks a tail root."""

    __slots__ = ("succ", "name")

    def __init__(self, succ, name="X", check=True):
        self.succ = tuple(int(v) for v in succ)
        self.name = name
        if check:
            n = len(self.succ)
            if n == 0 or self.succ[0] != 0:
                raise ValueError("succ(base) must be base")
            if any(not (v == TAIL or 0 <= v < n) for v in self.succ):
                raise ValueError("successor out of range")

    @property
    def size(self):
        """Number of non-base core vertices."""
        return len(self.succ) - 1

    @property
    def tails(self):
        return frozenset(v for v, s in enumerate(self.succ) if s == TAIL)

    def __eq__(self, other):
        return type(other) is type(self) and self.succ == other.succ

    def __hash__(self):
        return hash(self.succ)

    def __repr__(self):
        return f"FgNSet({self.name!r}, {list(self.succ)})"


def as_fgn(X):
    return X if isinstance(X, FgNSet) else FgNSet(X.succ, name=X.name, check=False)


# -- classification -------------------------------------------------------


class NSetClass(NamedTuple):
    kind: str  # "rooted_tree" or "has_loops"
    loops: tuple = ()

    @property
    def rooted_tree(self):
        return self.kind == "rooted_tree"


def cycles(X):
    """Cycles of the successor map other than the base point, each listed from its least vertex."""
    succ = X.succ
    n = len(succ)
    state = [0] * n  # 0 new, 1 on current walk, 2 finished
    state[0] = 2
    found = []
    for start in range(1, n):
        if state[start]:
            continue
        path = []
        x = start
        while x != TAIL and state[x] == 0:
            state[x] = 1
            path.append(x)
            x = succ[x]
        if x != TAIL and state[x] == 1:
            cyc = path[path.index(x):]
            k = cyc.index(min(cyc))
            found.append(tuple(cyc[k:] + cyc[:k]))
        for v in path:
            state[v] = 2
    return sorted(found)


def classify_nset(X):
    """Rooted tree iff every forward orbit reaches the base point."""
    cs = cycles(X)
    if not cs:
        return NSetClass("rooted_tree")
    return NSetClass("has_loops", tuple(sorted(len(c) for c in cs)))


def depth(X):
    """Steps needed by every vertex to reach the base point or a cycle."""
    on_cycle = {v for c in cycles(X) for v in c}
    memo = {0: 0}
    for v in on_cycle:
        memo[v] = 0

    def d(x):
        chain = []
        while x not in memo:
            chain.append(x)
            x = X.succ[x]
        k = memo[x]
        for y in reversed(chain):
            k += 1
            memo[y] = k
        return memo[chain[0]] if chain else memo[x]

    return max((d(x) for x in range(len(X.succ))), default=0)


def to_truncated_aset(X, name=None):
    """The N-set ``X`` as an A-set over a finite quotient of N acting through ``t``.

    Rooted trees of depth ``d`` act through ``N/t^d``; graphs with loops act
    through ``t^N = t^(N+L)`` with ``N`` the preperiod bound (at least 1)
    and ``L`` the lcm of the cycle lengths.
    """
    cls = classify_nset(X)
    d = depth(X)
    if cls.rooted_tree:
        A = truncated_polynomial(max(d, 1))
        count = A.n - 1
    else:
        A = cyclic_monoid(max(d, 1), lcm(*cls.loops))
        count = A.n - 1
    m = len(X.succ)
    act = [[0] * m]
    row = list(range(m))
    for _ in range(count):
        act.append(row)
        row = [X.succ[v] for v in row]
    return FiniteASet(A, act, name=name or X.name, check=False)


# -- canonical form -------------------------------------------------------


def _children(X):
    succ = X.succ
    n = len(succ)
    on_cycle = {v for c in cycles(X) for v in c}
    kids = [[] for _ in range(n)]
    for v in range(1, n):
        s = succ[v]
        if s == TAIL:
            continue
        if v in on_cycle and s in on_cycle:
            continue
        kids[s].append(v)
    return kids


def nset_canonical(X):
    """``(key, order)``: an isomorphism invariant and a vertex order realising it.

    Trees are encoded bottom-up by sorted child encodings; a cycle by the
    least rotation of the encodings of its vertices.
    """
    kids = _children(X)
    enc = {}

    def encode(v):
        stack = [(v, False)]
        while stack:
            u, done = stack.pop()
            if done:
                enc[u] = "(" + "".join(sorted(enc[c] for c in kids[u])) + ")"
            else:
                stack.append((u, True))
                for c in kids[u]:
                    stack.append((c, False))
        return enc[v]

    def emit(v, out):
        out.append(v)
        for c in sorted(kids[v], key=lambda c: enc[c]):
            emit(c, out)

    base_code = encode(0)
    tail_roots = sorted(X.tails if isinstance(X, FgNSet) else ())
    tails = []
    for r in tail_roots:
        tails.append((encode(r), r))
    tails.sort()
    cyc = []
    for c in cycles(X):
        codes = [encode(v) for v in c]
        rots = [(tuple(codes[i:] + codes[:i]), i) for i in range(len(c))]
        best, i = min(rots)
        cyc.append((best, c[i:] + c[:i]))
    cyc.sort()
    key = (base_code, tuple(t for t, _ in tails), tuple(b for b, _ in cyc))
    order = []
    emit(0, order)
    for _, r in tails:
        emit(r, order)
    for _, verts in cyc:
        for v in verts:
            emit(v, order)
    return key, order


def nset_key(X):
    return nset_canonical(X)[0]


def canonical_nset(X, name=None):
    """Relabel so that equal keys give equal successor tuples."""
    _, order = nset_canonical(X)
    pos = {v: i for i, v in enumerate(order)}
    succ = [0] * len(order)
    for v, i in pos.items():
        s = X.succ[v]
        succ[i] = TAIL if s == TAIL else pos[s]
    cls = type(X)
    return cls(succ, name=name or X.name, check=False)


def fgn_iso(X, Y):
    """An isomorphism ``X -> Y`` (vertex map, tails to tails), or None."""
    X, Y = fgn_canonicalize(as_fgn(X)), fgn_canonicalize(as_fgn(Y))
    kx, ox = nset_canonical(X)
    ky, oy = nset_canonical(Y)
    if kx != ky:
        return None
    f = [0] * len(ox)
    for u, v in zip(ox, oy):
        f[u] = v
    return tuple(f)


def nset_iso(X, Y):
    if len(X.succ) != len(Y.succ):
        return None
    kx, ox = nset_canonical(X)
    ky, oy = nset_canonical(Y)
    if kx != ky:
        return None
    f = [0] * len(ox)
    for u, v in zip(ox, oy):
        f[u] = v
    return tuple(f)


# -- finitely generated N-sets --------------------------------------------


def fgn_canonicalize(X, name=None):
    """Roll tail roots back while they have exactly one predecessor.

    A tail root with a single predecessor ``p`` is indistinguishable from the
    chain starting at ``p``, so ``p`` becomes the root. The result has the
    smallest possible core.
    """
    succ = list(X.succ)
    alive = [True] * len(succ)
    changed = True
    while changed:
        changed = False
        preds = {}
        for v, s in enumerate(succ):
            if alive[v] and v and s not in (TAIL,):
                preds.setdefault(s, []).append(v)
        for r, s in enumerate(succ):
            if alive[r] and s == TAIL and len(preds.get(r, ())) == 1:
                p = preds[r][0]
                alive[r] = False
                succ[p] = TAIL
                changed = True
                break
    keep = [v for v in range(len(succ)) if alive[v]]
    pos = {v: i for i, v in enumerate(keep)}
    new = [TAIL if succ[v] == TAIL else pos[succ[v]] for v in keep]
    return FgNSet(new, name=name or X.name, check=False)


def nat(name="N"):
    """The free N-set on one generator."""
    return FgNSet([0, TAIL], name=name)


def path(k, name=None):
    """Rooted path ``x_k -> ... -> x_1 -> base`` (``N/t^k`` as an N-set)."""
    return FunctionalNSet([0] + list(range(k)), name=name or f"path{k}")


def loop(d, name=None):
    """A ``d``-cycle disjoint from the base point."""
    return FunctionalNSet([0] + [((i + 1) % d) + 1 for i in range(d)], name=name or f"L{d}")


class FgSubset(NamedTuple):
    """Forward-closed subset: core vertices plus chains entered at ``t^k r``."""

    members: frozenset
    offsets: tuple  # sorted (root, k) pairs, k >= 1, root not in members


def is_forward_closed(X, members):
    if 0 not in members:
        return False
    return all(X.succ[v] == TAIL or X.succ[v] in members for v in members)


def fgn_subsets(X, max_offset=None):
    """All forward-closed subsets; chain offsets go up to ``max_offset``."""
    X = as_fgn(X)
    n = len(X.succ)
    roots = sorted(X.tails)
    if max_offset is None:
        max_offset = max(1, n - 1)
    out = []
    others = list(range(1, n))
    for bits in product((False, True), repeat=len(others)):
        members = frozenset([0] + [v for v, b in zip(others, bits) if b])
        if not is_forward_closed(X, members):
            continue
        free_roots = [r for r in roots if r not in members]
        for ks in product(range(max_offset + 1), repeat=len(free_roots)):
            offsets = tuple((r, k) for r, k in zip(free_roots, ks) if k)
            out.append(FgSubset(members, offsets))
    return out


def _check_subset(X, Y):
    if not is_forward_closed(X, Y.members):
        raise NotClosed(f"{sorted(Y.members)} is not forward closed")
    for r, k in Y.offsets:
        if X.succ[r] != TAIL or r in Y.members or k < 1:
            raise NotClosed(f"bad chain offset {(r, k)}")


def fgn_subobject(X, Y, name=None):
    X = as_fgn(X)
    _check_subset(X, Y)
    keep = sorted(Y.members)
    pos = {v: i for i, v in enumerate(keep)}
    succ = [TAIL if X.succ[v] == TAIL else pos[X.succ[v]] for v in keep]
    succ += [TAIL] * len(Y.offsets)
    return fgn_canonicalize(FgNSet(succ, check=False), name=name or f"{X.name}|sub")


def fgn_quotient(X, Y, name=None):
    """``X/Y`` with ``Y`` collapsed to the base point, re-canonicalised."""
    X = as_fgn(X)
    _check_subset(X, Y)
    keep = [0] + [v for v in range(1, len(X.succ)) if v not in Y.members]
    pos = {v: i for i, v in enumerate(keep)}
    succ = [0] * len(keep)
    offsets = dict(Y.offsets)
    for v in keep[1:]:
        s = X.succ[v]
        if s != TAIL:
            succ[pos[v]] = 0 if s in Y.members else pos[s]
        elif v not in offsets:
            succ[pos[v]] = TAIL
        else:
            # v, tv, ..., t^(k-1) v survive; t^k v lands in Y
            prev = pos[v]
            for _ in range(offsets[v] - 1):
                succ.append(None)
                succ[prev] = len(succ) - 1
                prev = len(succ) - 1
            succ[prev] = 0
    if not any(v == TAIL for v in succ):
        return canonical_nset(FunctionalNSet(succ, check=False), name=name or f"{X.name}/sub")
    return fgn_canonicalize(FgNSet(succ, check=False), name=name or f"{X.name}/sub")


# -- finite N-sets as subobjects/quotients --------------------------------


def nset_subsets(X):
    """Forward-closed subsets of a finite N-set."""
    return [Y.members for Y in fgn_subsets(X, max_offset=0)]


def nset_subobject(X, members, name=None):
    keep = sorted(members)
    pos = {v: i for i, v in enumerate(keep)}
    return FunctionalNSet([pos[X.succ[v]] for v in keep], name=name or f"{X.name}|sub", check=False)


def nset_quotient(X, members, name=None):
    keep = [0] + [v for v in range(1, len(X.succ)) if v not in members]
    pos = {v: i for i, v in enumerate(keep)}
    succ = [0 if X.succ[v] in members else pos[X.succ[v]] for v in keep]
    return FunctionalNSet(succ, name=name or f"{X.name}/sub", check=False)


# -- enumeration ----------------------------------------------------------


def all_functional_graphs(k):
    """Every successor map on ``k`` non-base points (labelled)."""
    for tail in product(range(k + 1), repeat=k):
        yield (0,) + tail


def enumerate_nsets(n):
    """Isomorphism classes of finite N-sets with at most ``n`` non-base points."""
    found = {}
    for k in range(n + 1):
        for succ in all_functional_graphs(k):
            X = FunctionalNSet(succ, check=False)
            key = nset_key(X)
            if key not in found:
                found[key] = canonical_nset(X)
    ordered = sorted(found.items(), key=lambda kv: (kv[1].size, kv[0]))
    out = []
    for i, (_, X) in enumerate(ordered):
        X.name = f"nset{X.size}:{i}"
        out.append(X)
    return out


def enumerate_fgnsets(n):
    """Classes of f.g. N-sets whose canonical core has at most ``n`` non-base vertices."""
    found = {}
    for k in range(n + 1):
        for tail in product(range(-1, k + 1), repeat=k):
            X = fgn_canonicalize(FgNSet((0,) + tail, check=False))
            if X.size > n:
                continue
            key = nset_key(X)
            if key not in found:
                found[key] = canonical_nset(X)
    ordered = sorted(found.items(), key=lambda kv: (kv[1].size, kv[0]))
    out = []
    for i, (_, X) in enumerate(ordered):
        X.name = f"fgn{X.size}:{i}"
        out.append(X)
    return out


def to_dot(X):
    """Graphviz source for the successor graph."""
    lines = [f'digraph "{X.name}" {{', '  0 [label="*", shape=doublecircle];']
    for v, s in enumerate(X.succ):
        if v == 0:
            continue
        if s == TAIL:
            lines.append(f'  t{v} [label="...", shape=plaintext];')
            lines.append(f"  {v} -> t{v} [style=dashed];")
        else:
            lines.append(f"  {v} -> {s};")
    lines.append("}")
    return "\n".join(lines) + "\n"
