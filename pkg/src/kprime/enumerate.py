"""Enumeration of finite A-sets up to isomorphism.

Actions are determined by the maps of a generating set of the monoid, so
the search assigns generator images point by point and prunes with the
monoid relations (one per edge of the left Cayley graph that is not a
tree edge). New points are only introduced in discovery order, which
removes most relabelings; the rest are merged by canonical form.
"""

from .aset import FiniteASet, free_aset, point_aset
from .canon import canonical_form
from .monoid import _words

FLAVORS = ("all", "pc", "free")


class _Plan:
    """Word tree and relation list for a monoid, shared by all searches."""

    def __init__(self, A):
        gens, parent, order = _words(A)
        self.A = A
        self.gens = gens
        self.gindex = {g: i for i, g in enumerate(gens)}
        # (element, generator index, parent element) in BFS order, root excluded
        self.steps = [(b, self.gindex[parent[b][0]], parent[b][1]) for b in order[1:]]
        self.reached = set(order)
        rels = []
        for a in order:
            for g in gens:
                b = A.mul[g][a]
                if parent.get(b) == (g, a):
                    continue
                rels.append((self.gindex[g], a, b if b in self.reached else None))
        if 0 in self.reached:
            rels.append((None, 0, None))
        self.rels = rels


def _evaluate(plan, f, m):
    """Partial action table: ``E[a][x]`` or None where still undetermined."""
    nA = plan.A.n
    E = [None] * nA
    E[plan.A.one] = list(range(m))
    if 0 not in plan.reached:
        E[0] = [0] * m
    for b, gi, p in plan.steps:
        fg = f[gi]
        Ep = E[p]
        E[b] = [None if Ep[x] is None else fg[Ep[x]] for x in range(m)]
    return E


def _consistent(plan, f, m, pc):
    E = _evaluate(plan, f, m)
    for gi, a, b in plan.rels:
        Ea = E[a]
        if gi is None:
            if any(v not in (None, 0) for v in Ea):
                return False
            continue
        fg = f[gi]
        Eb = E[b] if b is not None else None
        for x in range(m):
            u = Ea[x]
            if u is None:
                continue
            v = fg[u]
            if v is None:
                continue
            w = 0 if Eb is None else Eb[x]
            if w is not None and v != w:
                return False
    if pc:
        for x in range(1, m):
            seen = set()
            for row in E:
                v = row[x]
                if v:
                    if v in seen:
                        return False
                    seen.add(v)
    return True


def _search(plan, m, pc):
    """Yield generator maps of every A-set on ``m`` points (with repeats)."""
    k = len(plan.gens)
    f = [[0] + [None] * (m - 1) for _ in range(k)]
    slots = [(x, gi) for x in range(1, m) for gi in range(k)]

    def rec(pos, maxlabel):
        if pos == len(slots):
            yield [list(row) for row in f]
            return
        x, gi = slots[pos]
        if gi == 0 and x > maxlabel:
            maxlabel = x
        top = min(maxlabel + 1, m - 1)
        for v in range(top + 1):
            f[gi][x] = v
            if _consistent(plan, f, m, pc):
                yield from rec(pos + 1, max(maxlabel, v))
        f[gi][x] = None

    if k == 0:
        if _consistent(plan, f, m, pc):
            yield []
        return
    yield from rec(0, 0)


def _aset_from_maps(plan, f, m, name):
    E = _evaluate(plan, f, m)
    return FiniteASet(plan.A, E, name=name, check=False)


def enumerate_asets(A, n, flavor="all"):
    """Isomorphism classes of A-sets with at most ``n`` non-base points.

    ``flavor`` is ``"all"``, ``"pc"`` (the pc condition on the A-set) or
    ``"free"`` (wedges of copies of ``A``). The result is sorted by
    ``(size, canonical key)`` and each entry is in canonical form.
    """
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    if n < 0:
        raise ValueError("n must be >= 0")
    if flavor == "free":
        step = A.n - 1
        if step == 0:
            return [point_aset(A)]
        out = [free_aset(A, r) for r in range(n // step + 1)]
        return [_canonical(X, f"free{r}") for r, X in enumerate(out)]
    plan = _Plan(A)
    seen = {}
    for m in range(1, n + 2):
        for f in _search(plan, m, flavor == "pc"):
            X = _aset_from_maps(plan, f, m, "X")
            cf = canonical_form(X)
            if cf.key not in seen:
                seen[cf.key] = X
    out = []
    for i, key in enumerate(sorted(seen)):
        out.append(FiniteASet(A, key[1], name=f"{A.name}:{key[0] - 1}:{i}", check=False))
    return out


def _canonical(X, name):
    key = canonical_form(X).key
    return FiniteASet(X.monoid, key[1], name=name, check=False)


def all_actions(A, m):
    """Every valid action table on ``m`` points (labelled, not up to iso)."""
    plan = _Plan(A)
    k = len(plan.gens)
    f = [[0] + [None] * (m - 1) for _ in range(k)]
    slots = [(x, gi) for x in range(1, m) for gi in range(k)]
    out = []

    def rec(pos):
        if pos == len(slots):
            out.append(_aset_from_maps(plan, f, m, "X"))
            return
        x, gi = slots[pos]
        for v in range(m):
            f[gi][x] = v
            if _consistent(plan, f, m, False):
                rec(pos + 1)
        f[gi][x] = None

    if k == 0:
        if _consistent(plan, f, m, False):
            out.append(_aset_from_maps(plan, f, m, "X"))
    else:
        rec(0)
    return out
