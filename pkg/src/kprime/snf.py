"""Exact integer linear algebra: Smith normal form, lattices, presentations.

All arithmetic uses Python integers, so nothing overflows and torsion is
exact.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction


def identity_matrix(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def det(M):
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [[Fraction(v) for v in row] for row in M]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        result *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                for k in range(c, n):
                    A[r][k] -= f * A[c][k]
    value = sign * result
    assert value.denominator == 1
    return int(value)


def smith_normal_form(M, ncols=None):
    """Return ``(D, U, V)`` with ``U M V = D`` diagonal, ``U, V`` unimodular.

    The diagonal entries are non-negative and each divides the next.
    """
    r = len(M)
    c = ncols if ncols is not None else (len(M[0]) if r else 0)
    D = [list(row) for row in M]
    U = identity_matrix(r)
    V = identity_matrix(c)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        for mat in (D, U):
            a, b = mat[dst], mat[src]
            for k, v in enumerate(b):
                if v:
                    a[k] += q * v

    def add_col(dst, src, q):
        for mat in (D, V):
            for row in mat:
                v = row[src]
                if v:
                    row[dst] += q * v

    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            row = D[i]
            for j in range(t, c):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            p = D[t][t]
            clean = True
            for i in range(t + 1, r):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, c):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        clean = False
            if not clean:
                cand = [(abs(D[i][t]), i, t) for i in range(t + 1, r) if D[i][t]]
                cand += [(abs(D[t][j]), t, j) for j in range(t + 1, c) if D[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(t, i)
                if j != t:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            for mat in (D, U):
                mat[t] = [-v for v in mat[t]]
        t += 1
    return D, U, V


def diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def invariant_factors(M, ncols=None):
    """Non-zero diagonal of the Smith form (units included)."""
    D, _, _ = smith_normal_form(M, ncols)
    return [d for d in diagonal(D) if d]


def is_smith_form(D):
    diag = diagonal(D)
    for i, row in enumerate(D):
        for j, v in enumerate(row):
            if i != j and v:
                return False
    nz = [d for d in diag if d]
    if any(d < 0 for d in diag):
        return False
    if len(nz) != len([d for d in diag[: len(nz)] if d]):
        return False
    return all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


# -- lattices -------------------------------------------------------------


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def echelon_basis(rows, ncols):
    """Row-echelon basis (by pivot column) of the lattice spanned by ``rows``."""
    basis = {}
    for row in rows:
        v = list(row)
        while True:
            p = next((j for j in range(ncols) if v[j]), None)
            if p is None:
                break
            if p not in basis:
                if v[p] < 0:
                    v = [-x for x in v]
                basis[p] = v
                break
            b = basis[p]
            if v[p] % b[p] == 0:
                q = v[p] // b[p]
                v = [x - q * y for x, y in zip(v, b)]
                continue
            g, s, t = _xgcd(b[p], v[p])
            bp, vp = b[p] // g, v[p] // g
            newb = [s * y + t * x for x, y in zip(v, b)]
            v = [bp * x - vp * y for x, y in zip(v, b)]
            if newb[p] < 0:
                newb = [-x for x in newb]
            basis[p] = newb
    return [basis[p] for p in sorted(basis)]


def lattice_contains(basis, v):
    """Membership in the lattice spanned by an echelon basis."""
    v = list(v)
    for b in basis:
        p = next(j for j, x in enumerate(b) if x)
        if any(v[:p]):
            return False
        if v[p] % b[p]:
            return False
        q = v[p] // b[p]
        if q:
            v = [x - q * y for x, y in zip(v, b)]
    return not any(v)


def lattice_equal(rows1, rows2, ncols):
    b1 = echelon_basis(rows1, ncols)
    b2 = echelon_basis(rows2, ncols)
    return all(lattice_contains(b1, v) for v in b2) and all(lattice_contains(b2, v) for v in b1)


def left_kernel(M, ncols):
    """Basis of ``{y : y M = 0}`` as integer row vectors."""
    D, U, _ = smith_normal_form(M, ncols)
    rank = sum(1 for d in diagonal(D) if d)
    return [U[i] for i in range(rank, len(M))]


# -- presentations --------------------------------------------------------


@dataclass
class AbGroup:
    """``Z^free_rank + sum Z/d`` from the Smith form of a relation matrix.

    ``residual`` is the relation matrix left after eliminating unit pivots;
    ``U residual V = D``.
    """

    free_rank: int
    torsion: list
    residual: list = field(repr=False, default_factory=list)
    U: list = field(repr=False, default_factory=list)
    V: list = field(repr=False, default_factory=list)
    D: list = field(repr=False, default_factory=list)

    @property
    def ncoords(self):
        return len(self.torsion) + self.free_rank

    @property
    def moduli(self):
        """Coordinate moduli: torsion orders then 0 for each free summand."""
        return list(self.torsion) + [0] * self.free_rank

    def reduce(self, vec):
        return tuple(v % d if d else v for v, d in zip(vec, self.moduli))

    def is_trivial(self):
        return self.ncoords == 0

    def describe(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def check(self):
        """Smith form, divisibility and unimodularity of the stored transforms."""
        if not self.residual:
            return True
        if matmul(matmul(self.U, self.residual), self.V) != self.D:
            return False
        if not is_smith_form(self.D):
            return False
        return abs(det(self.U)) == 1 and abs(det(self.V)) == 1


@dataclass
class ClassMap:
    """Group coordinates for every generator of a presentation."""

    group: AbGroup
    vectors: list  # one coordinate tuple per generator

    def of(self, combo):
        """Class of a combination given as ``{generator index: coefficient}``."""
        total = [0] * self.group.ncoords
        for gidx, coef in combo.items():
            for k, v in enumerate(self.vectors[gidx]):
                total[k] += coef * v
        return self.group.reduce(total)

    def is_zero(self, combo):
        return not any(self.of(combo))


def presentation_group(rows, ngens):
    """Abelian group on ``ngens`` generators modulo ``rows`` (sparse dicts).

    Unit pivots are eliminated by substitution first; the remaining
    relations go through :func:`smith_normal_form`.
    """
    live = {}
    col_rows = defaultdict(set)
    for rid, row in enumerate(rows):
        row = {c: v for c, v in row.items() if v}
        if row:
            live[rid] = row
            for c in row:
                col_rows[c].add(rid)
    subst = []  # (column, {other column: coefficient})
    while True:
        pick = None
        for rid, row in live.items():
            for c, v in row.items():
                if v in (1, -1):
                    score = (len(row), len(col_rows[c]))
                    if pick is None or score < pick[0]:
                        pick = (score, rid, c)
            if pick is not None and pick[0][0] <= 2:
                break
        if pick is None:
            break
        _, rid, c = pick
        prow = live.pop(rid)
        for col in prow:
            col_rows[col].discard(rid)
        u = prow[c]
        expr = {j: -u * a for j, a in prow.items() if j != c}
        subst.append((c, expr))
        for other in list(col_rows[c]):
            row = live[other]
            b = row[c]
            for j, a in prow.items():
                nv = row.get(j, 0) - b * u * a
                if nv:
                    if j not in row:
                        col_rows[j].add(other)
                    row[j] = nv
                else:
                    if j in row:
                        del row[j]
                        col_rows[j].discard(other)
            if not row:
                del live[other]
        col_rows.pop(c, None)
    eliminated = {c for c, _ in subst}
    active = [j for j in range(ngens) if j not in eliminated]
    apos = {j: k for k, j in enumerate(active)}
    residual = [[row.get(j, 0) for j in active] for row in live.values()]
    ncols = len(active)
    if residual:
        D, U, V = smith_normal_form(residual, ncols)
        diag = diagonal(D)
    else:
        D, U, V, diag = [], [], identity_matrix(ncols), []
    mods = [diag[i] if i < len(diag) else 0 for i in range(ncols)]
    keep = [i for i, d in enumerate(mods) if d != 1]
    torsion = [mods[i] for i in keep if mods[i] > 1]
    free = [i for i in keep if mods[i] == 0]
    tors_idx = [i for i in keep if mods[i] > 1]
    order = tors_idx + free
    group = AbGroup(len(free), torsion, residual, U, V, D)
    vectors = [None] * ngens
    for j in active:
        row = V[apos[j]] if ncols else []
        vectors[j] = group.reduce([row[i] for i in order])
    for c, expr in reversed(subst):
        total = [0] * group.ncoords
        for j, a in expr.items():
            for k, v in enumerate(vectors[j]):
                total[k] += a * v
        vectors[c] = group.reduce(total)
    return group, ClassMap(group, vectors)


def generates(group, vectors):
    """Do the coordinate ``vectors`` generate the whole of ``group``?"""
    k = group.ncoords
    if k == 0:
        return True
    rows = [list(v) for v in vectors]
    for i, d in enumerate(group.torsion):
        e = [0] * k
        e[i] = d
        rows.append(e)
    if not rows:
        return False
    facs = invariant_factors(rows, k)
    return len(facs) == k and all(f == 1 for f in facs)


def subgroup_contains(group, vectors, target):
    """Is ``target`` in the subgroup generated by ``vectors``?"""
    k = group.ncoords
    rows = [list(v) for v in vectors]
    for i, d in enumerate(group.torsion):
        e = [0] * k
        e[i] = d
        rows.append(e)
    basis = echelon_basis(rows, k)
    return lattice_contains(basis, list(target))
