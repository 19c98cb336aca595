"""Finite pointed left A-sets and the operations of the category A-Sets.

An A-set on ``m`` points is stored as an action table ``act[a][x]``
(monoid element ``a``, point ``x``) with base point 0. Subsets are
frozensets of point indices that always contain the base point.
"""

from collections import deque

import numpy as np

from .errors import (
    AmbientNotPc,
    BadAction,
    NotClosed,
    NotEpi,
    NotEquivariant,
    NotMonic,
)
from .monoid import Decision, is_pc_monoid

BASE = 0


class FiniteASet:
    __slots__ = ("monoid", "act", "name")

    def __init__(self, monoid, act, name="X", check=True):
        self.monoid = monoid
        self.act = tuple(tuple(int(v) for v in row) for row in act)
        self.name = name
        if check:
            bad = action_defect(monoid, self.act)
            if bad is not None:
                raise BadAction(f"invalid action: {bad}", witness=bad)

    @property
    def npoints(self):
        return len(self.act[0])

    @property
    def size(self):
        """Number of non-base points."""
        return len(self.act[0]) - 1

    @property
    def points(self):
        return range(len(self.act[0]))

    def __call__(self, a, x):
        return self.act[a][x]

    def __eq__(self, other):
        if not isinstance(other, FiniteASet):
            return NotImplemented
        return self.act == other.act and self.monoid.mul == other.monoid.mul

    def __hash__(self):
        return hash(self.act)

    def __repr__(self):
        return f"FiniteASet({self.name!r} over {self.monoid.name}, size={self.size})"


def action_defect(A, act):
    """First violated action axiom as a tuple, or None."""
    if len(act) != A.n:
        return ("rows", len(act))
    m = len(act[0])
    if m < 1:
        return ("empty",)
    for a, row in enumerate(act):
        if len(row) != m:
            return ("row length", a)
        for v in row:
            if not 0 <= v < m:
                return ("range", a, v)
    for x in range(m):
        if act[A.one][x] != x:
            return ("unit", x)
        if act[0][x] != 0:
            return ("zero", x)
    for a in range(A.n):
        if act[a][0] != 0:
            return ("base", a)
    T = np.asarray(act, dtype=np.intp)
    M = np.asarray(A.mul, dtype=np.intp)
    left = T[:, T]  # left[a, b, x] = a(bx)
    right = T[M]  # right[a, b, x] = (ab)x
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, x = (int(v) for v in bad[0])
        return ("assoc", a, b, x)
    return None


def validate_aset(A, act, name="X"):
    return FiniteASet(A, act, name=name, check=True)


def point_aset(A, name="pt"):
    return FiniteASet(A, [[0] for _ in A.elements], name=name, check=False)


def regular_aset(A, name=None):
    """``A`` acting on itself by left multiplication."""
    return FiniteASet(A, [list(row) for row in A.mul], name=name or A.name, check=False)


def free_aset(A, r, name=None):
    """The wedge of ``r`` copies of ``A``."""
    X = point_aset(A)
    for _ in range(r):
        X = wedge(X, regular_aset(A))[0]
    X.name = name or f"{A.name}^v{r}"
    return X


def trivial_aset(A, k, name=None):
    """``k`` points fixed by every non-zero element whose product is non-zero.

    Only an action when the non-zero elements are closed under products
    (for instance ``G_+``).
    """
    act = [[0] * (k + 1) for _ in A.elements]
    for a in A.elements:
        if a != 0:
            act[a] = list(range(k + 1))
    return FiniteASet(A, act, name=name or f"triv{k}")


def restrict(f, X, name=None):
    """Restriction of scalars along ``f: A -> B`` of a ``B``-set ``X``."""
    act = [X.act[f.map[a]] for a in f.source.elements]
    return FiniteASet(f.source, act, name=name or X.name, check=False)


# -- pc -------------------------------------------------------------------


def is_pc_aset(X, strict=True):
    """``ax = bx != *`` forces ``a = b``.

    With ``strict`` the ambient monoid must itself be pc (otherwise
    :class:`AmbientNotPc`); the condition itself makes sense for any monoid
    and ``strict=False`` evaluates it regardless.
    """
    if strict and not is_pc_monoid(X.monoid):
        raise AmbientNotPc(f"{X.monoid.name} is not pc")
    act = X.act
    n = len(act)
    for x in range(1, X.npoints):
        seen = {}
        for a in range(n):
            v = act[a][x]
            if v:
                if v in seen:
                    return Decision(False, (seen[v], a, x))
                seen[v] = a
    return Decision(True)


# -- maps -----------------------------------------------------------------


class ASetMap:
    __slots__ = ("source", "target", "map")

    def __init__(self, source, target, mapping, check=True):
        self.source = source
        self.target = target
        self.map = tuple(mapping)
        if check:
            bad = map_defect(source, target, self.map)
            if bad is not None:
                raise NotEquivariant(f"not an A-set map: {bad}", witness=bad)

    def __call__(self, x):
        return self.map[x]

    def compose(self, other):
        """``self`` after ``other``."""
        return ASetMap(other.source, self.target, [self.map[v] for v in other.map], check=False)

    def is_injective(self):
        return len(set(self.map)) == len(self.map)

    def is_surjective(self):
        return len(set(self.map)) == self.target.npoints

    def is_iso(self):
        return self.is_injective() and self.is_surjective()

    def kernel(self):
        return frozenset(x for x, y in enumerate(self.map) if y == 0)

    def image(self):
        return frozenset(self.map)

    def inverse(self):
        inv = [0] * len(self.map)
        for x, y in enumerate(self.map):
            inv[y] = x
        return ASetMap(self.target, self.source, inv, check=False)

    def __repr__(self):
        return f"ASetMap({self.source.name} -> {self.target.name}, {self.map})"


def map_defect(X, Y, f):
    if len(f) != X.npoints:
        return ("length",)
    if f[0] != 0:
        return ("base",)
    for a in range(len(X.act)):
        xa, ya = X.act[a], Y.act[a]
        for x in range(X.npoints):
            if f[xa[x]] != ya[f[x]]:
                return ("equivariance", a, x)
    return None


def is_equivariant(X, Y, f):
    return map_defect(X, Y, f) is None


def identity(X):
    return ASetMap(X, X, range(X.npoints), check=False)


def zero_map(X, Y):
    return ASetMap(X, Y, [0] * X.npoints, check=False)


def is_admissible_epi(j):
    """Surjective and injective away from the kernel, i.e. ``X -> X/ker``."""
    if not j.is_surjective():
        return False
    hits = [y for y in j.map if y != 0]
    return len(hits) == len(set(hits))


def is_admissible_monic(i):
    return i.is_injective()


def is_admissible(i, j):
    """``Y >-> X ->> Z`` with ``Z`` the cokernel of ``i`` and ``i`` the kernel of ``j``."""
    if i.target is not j.source and i.target.act != j.source.act:
        return False
    if map_defect(i.source, i.target, i.map) or map_defect(j.source, j.target, j.map):
        return False
    if not is_admissible_monic(i) or not is_admissible_epi(j):
        return False
    return j.kernel() == i.image()


# -- subsets and quotients ------------------------------------------------


def closure(X, seeds):
    """Smallest A-subset containing ``seeds``."""
    members = {0}
    todo = [s for s in seeds]
    act = X.act
    while todo:
        x = todo.pop()
        if x in members:
            continue
        members.add(x)
        for row in act:
            y = row[x]
            if y not in members:
                todo.append(y)
    return frozenset(members)


def is_closed(X, members):
    if 0 not in members:
        return False
    return all(row[x] in members for row in X.act for x in members)


class ASubset:
    __slots__ = ("parent", "members")

    def __init__(self, parent, members, check=True):
        self.parent = parent
        self.members = frozenset(members) | {0}
        if check and not is_closed(parent, self.members):
            raise NotClosed(f"{sorted(self.members)} is not closed under the action")

    def __contains__(self, x):
        return x in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __eq__(self, other):
        return isinstance(other, ASubset) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"ASubset({sorted(self.members)})"


def _members(Y):
    return Y.members if isinstance(Y, ASubset) else frozenset(Y) | {0}


def all_subsets(X):
    """Every A-subset of ``X`` (as frozensets), smallest first."""
    cyclic = {x: closure(X, [x]) for x in X.points if x}
    found = {frozenset({0})}
    todo = deque(found)
    while todo:
        S = todo.popleft()
        for x, C in cyclic.items():
            if x not in S:
                T = S | C
                if T not in found:
                    found.add(T)
                    todo.append(T)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def subobject(X, Y, name=None):
    """``Y`` as an A-set in its own right, with the inclusion ``Y >-> X``."""
    members = sorted(_members(Y))
    pos = {x: i for i, x in enumerate(members)}
    act = [[pos[row[x]] for x in members] for row in X.act]
    S = FiniteASet(X.monoid, act, name=name or f"{X.name}|sub", check=False)
    return S, ASetMap(S, X, members, check=False)


def quotient_aset(X, Y, name=None):
    """``X/Y``: points of ``X \\ Y`` plus base; anything landing in ``Y`` goes to base."""
    members = _members(Y)
    if not is_closed(X, members):
        raise NotClosed(f"{sorted(members)} is not an A-subset")
    proj = [0] * X.npoints
    k = 1
    for x in X.points:
        if x not in members:
            proj[x] = k
            k += 1
    kept = [x for x in X.points if x not in members]
    act = [[0] + [proj[row[x]] for x in kept] for row in X.act]
    Q = FiniteASet(X.monoid, act, name=name or f"{X.name}/sub", check=False)
    return Q, ASetMap(X, Q, proj, check=False)


def lattice_ops(Y, Z):
    """Union and intersection of two A-subsets of the same A-set."""
    if Y.parent is not Z.parent and Y.parent.act != Z.parent.act:
        raise ValueError("subsets of different A-sets")
    X = Y.parent
    return ASubset(X, Y.members | Z.members), ASubset(X, Y.members & Z.members)


def induced_map(p, q, f):
    """Given ``p: X ->> P``, ``q: Y ->> Q`` and ``f: X -> Y`` compatible with them,
    the map ``P -> Q`` it induces (None where not well defined)."""
    out = [None] * p.target.npoints
    for x, px in enumerate(p.map):
        v = q.map[f.map[x]]
        if out[px] is None:
            out[px] = v
        elif out[px] != v:
            return None
    if None in out:
        return None
    return ASetMap(p.target, q.target, out, check=False)


def noether_witness(X, Y, Z):
    """The isomorphism ``Y/(Y n Z) -> (Y u Z)/Z`` induced by inclusion."""
    Ym, Zm = _members(Y), _members(Z)
    inter, union = Ym & Zm, Ym | Zm
    Ysub, incY = subobject(X, Ym)
    Usub, incU = subobject(X, union)
    posY = {x: i for i, x in enumerate(incY.map)}
    posU = {x: i for i, x in enumerate(incU.map)}
    left, pl = quotient_aset(Ysub, [posY[x] for x in inter])
    right, pr = quotient_aset(Usub, [posU[x] for x in Zm])
    incl = ASetMap(Ysub, Usub, [posU[x] for x in incY.map], check=False)
    f = induced_map(pl, pr, incl)
    if f is None or not f.is_iso() or map_defect(f.source, f.target, f.map):
        raise AssertionError("second isomorphism theorem failed")  # pragma: no cover
    return f


# -- colimits and limits --------------------------------------------------


def wedge(X, W, name=None):
    """Coproduct ``X v W`` with its two injections."""
    mx, mw = X.npoints, W.npoints
    inj1 = list(range(mx))
    inj2 = [0] + list(range(mx, mx + mw - 1))
    act = []
    for a in range(len(X.act)):
        row = list(X.act[a]) + [inj2[v] for v in W.act[a][1:]]
        act.append(row)
    S = FiniteASet(X.monoid, act, name=name or f"{X.name}v{W.name}", check=False)
    return S, ASetMap(X, S, inj1, check=False), ASetMap(W, S, inj2, check=False)


def congruence_quotient(X, pairs, name=None):
    """Quotient of ``X`` by the smallest A-congruence containing ``pairs``.

    The class of the base point becomes the new base point.
    """
    parent = list(X.points)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    act = X.act
    todo = list(pairs)
    while todo:
        x, y = todo.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[max(rx, ry)] = min(rx, ry)
        for row in act:
            todo.append((row[x], row[y]))
    label = {}
    proj = []
    for x in X.points:
        r = find(x)
        if r not in label:
            label[r] = len(label)
        proj.append(label[r])
    reps = [None] * len(label)
    for x in X.points:
        if reps[proj[x]] is None:
            reps[proj[x]] = x
    qact = [[proj[row[r]] for r in reps] for row in act]
    Q = FiniteASet(X.monoid, qact, name=name or f"{X.name}/~", check=False)
    return Q, ASetMap(X, Q, proj, check=False)


def pushout_maps(f, g, name=None):
    """Pushout of arbitrary A-maps ``f: V -> X`` and ``g: V -> W``.

    Computed as the wedge ``X v W`` modulo the congruence generated by
    ``f(v) ~ g(v)``.
    """
    S, i1, i2 = wedge(f.target, g.target)
    pairs = [(i1.map[f.map[v]], i2.map[g.map[v]]) for v in f.source.points]
    P, proj = congruence_quotient(S, pairs, name=name)
    return P, proj.compose(i1), proj.compose(i2)


def pushout(f, g, name=None):
    """Pushout of two admissible monics ``f: V >-> X``, ``g: V >-> W``."""
    for h in (f, g):
        if not h.is_injective():
            raise NotMonic(f"{h} is not injective")
    return pushout_maps(f, g, name=name)


def pullback_maps(p, q, name=None):
    """Fiber product ``X x_Z W`` of ``p: X -> Z`` and ``q: W -> Z`` with projections."""
    pairs = [(0, 0)] + [
        (x, w)
        for x in p.source.points
        for w in q.source.points
        if (x, w) != (0, 0) and p.map[x] == q.map[w]
    ]
    pos = {pw: i for i, pw in enumerate(pairs)}
    act = []
    for a in range(len(p.source.act)):
        rx, rw = p.source.act[a], q.source.act[a]
        act.append([pos[(rx[x], rw[w])] for x, w in pairs])
    P = FiniteASet(p.source.monoid, act, name=name or "pullback", check=False)
    return (
        P,
        ASetMap(P, p.source, [x for x, _ in pairs], check=False),
        ASetMap(P, q.source, [w for _, w in pairs], check=False),
    )


def pullback(p, q, name=None):
    """Pullback of two admissible epis ``p: X ->> Z``, ``q: W ->> Z``."""
    for h in (p, q):
        if not is_admissible_epi(h):
            raise NotEpi(f"{h} is not an admissible epimorphism")
    return pullback_maps(p, q, name=name)


# -- other constructions --------------------------------------------------


def relabel(X, perm, name=None):
    """Image of ``X`` under a point permutation fixing the base (``perm[old] = new``)."""
    m = X.npoints
    inv = [0] * m
    for old, new in enumerate(perm):
        inv[new] = old
    act = [[perm[row[inv[y]]] for y in range(m)] for row in X.act]
    Y = FiniteASet(X.monoid, act, name=name or X.name, check=False)
    return Y, ASetMap(X, Y, perm, check=False)


def smash_aset(X, Y, name=None):
    """``X ^ Y`` with the diagonal action ``a(x, y) = (ax, ay)``."""
    pairs = [(x, y) for x in range(1, X.npoints) for y in range(1, Y.npoints)]
    pos = {p: i + 1 for i, p in enumerate(pairs)}
    act = []
    for a in range(len(X.act)):
        rx, ry = X.act[a], Y.act[a]
        row = [0]
        for x, y in pairs:
            u, v = rx[x], ry[y]
            row.append(0 if u == 0 or v == 0 else pos[(u, v)])
        act.append(row)
    return FiniteASet(X.monoid, act, name=name or f"{X.name}^{Y.name}", check=False)


def base_change(f, X, name=None):
    """``B ^_A X`` for a monoid map ``f: A -> B`` and an A-set ``X``.

    Starts from all pairs ``(b, x)`` and identifies ``(b f(a), x)`` with
    ``(b, a x)``; pairs with a zero component collapse to the base point.
    """
    A, B = f.source, f.target
    if X.monoid.mul != A.mul:
        raise ValueError("X is not an A-set for the source of f")
    m = X.npoints
    nB = B.n

    def idx(b, x):
        return 0 if b == 0 or x == 0 else (b * m + x)

    size = nB * m
    parent = list(range(size))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    def union(u, v):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)

    for b in B.elements:
        for a in A.elements:
            bfa = B.mul[b][f.map[a]]
            for x in range(m):
                union(idx(bfa, x), idx(b, X.act[a][x]))
    label = {find(0): 0}
    reps = [(0, 0)]
    for b in B.elements:
        for x in range(m):
            r = find(idx(b, x))
            if r not in label:
                label[r] = len(reps)
                reps.append((b, x))
    act = [[label[find(idx(B.mul[c][b], x))] for b, x in reps] for c in B.elements]
    return FiniteASet(B, act, name=name or f"{B.name}^{X.name}", check=False)


def orbits(X):
    """Connected components of the action graph, excluding the base point."""
    parent = list(X.points)

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for row in X.act:
        for x in range(1, X.npoints):
            y = row[x]
            if y:
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
    comps = {}
    for x in range(1, X.npoints):
        comps.setdefault(find(x), set()).add(x)
    return [frozenset(c) | {0} for c in sorted(comps.values(), key=min)]


def fixed_points(X, elements):
    """Non-base points fixed by every element in ``elements``."""
    return [x for x in range(1, X.npoints) if all(X.act[a][x] == x for a in elements)]
