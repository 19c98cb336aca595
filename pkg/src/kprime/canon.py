"""Canonical labelling of finite A-sets.

Colour refinement on the action graph (out-neighbour colours per monoid
element, fixed-point flags, in-neighbour multisets) splits the points into
cells; ties are broken by individualising each candidate in turn. The
canonical form is the lexicographically least relabelled action table over
all leaves of that search.
"""

from typing import NamedTuple

from .aset import ASetMap, FiniteASet


class CanonicalForm(NamedTuple):
    key: tuple
    perm: tuple  # perm[old point] = canonical point


def _refine(act, pre, colors):
    nA = len(act)
    m = len(colors)
    ncolors = len(set(colors))
    while True:
        sigs = []
        for x in range(m):
            out = tuple(colors[act[a][x]] for a in range(nA))
            fix = tuple(act[a][x] == x for a in range(nA))
            inn = tuple(sorted((a, colors[y]) for a, y in pre[x]))
            sigs.append((colors[x], out, fix, inn))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        k = len(ranks)
        if k == ncolors:
            return new
        colors, ncolors = new, k


def _individualize(colors, x):
    c = colors[x]
    return [
        col if (col < c or y == x) else col + 1
        for y, col in enumerate(colors)
    ]


def canonical_form(X):
    """Label-invariant form of ``X``: equal keys iff isomorphic."""
    act = X.act
    m = X.npoints
    pre = [[] for _ in range(m)]
    for a, row in enumerate(act):
        for y, x in enumerate(row):
            if y != x:
                pre[x].append((a, y))
    start = [0] + [1] * (m - 1)
    best = [None, None]

    def search(colors):
        colors = _refine(act, pre, colors)
        if len(set(colors)) == m:
            perm = colors
            inv = [0] * m
            for old, new in enumerate(perm):
                inv[new] = old
            table = tuple(tuple(perm[row[inv[y]]] for y in range(m)) for row in act)
            if best[0] is None or table < best[0]:
                best[0], best[1] = table, tuple(perm)
            return
        counts = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for x in range(m):
            if colors[x] == target:
                search(_individualize(colors, x))

    search(start)
    return CanonicalForm((m, best[0]), best[1])


def canonical_key(X):
    return canonical_form(X).key


def canonical_aset(X, name=None):
    """``X`` relabelled into its canonical form."""
    key, _ = canonical_form(X)
    return FiniteASet(X.monoid, key[1], name=name or X.name, check=False)


def iso_test(X, Y):
    """An isomorphism ``X -> Y`` as an :class:`ASetMap`, or None."""
    if X.monoid.mul != Y.monoid.mul or X.npoints != Y.npoints:
        return None
    cx, cy = canonical_form(X), canonical_form(Y)
    if cx.key != cy.key:
        return None
    inv = [0] * Y.npoints
    for old, new in enumerate(cy.perm):
        inv[new] = old
    return ASetMap(X, Y, [inv[cx.perm[x]] for x in X.points])


def is_isomorphic(X, Y):
    return iso_test(X, Y) is not None
