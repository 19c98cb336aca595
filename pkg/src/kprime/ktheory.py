"""Truncated Grothendieck groups of A-sets and N-sets.

A presentation has one generator per isomorphism class up to a size bound
and one relation ``[X] - [Y] - [X/Y]`` per A-subset ``Y`` of a generator
``X`` whose pieces also lie inside the bound. Everything downstream is exact
integer arithmetic.
"""

from dataclasses import dataclass, field

from . import nset as ns
from .aset import (
    FiniteASet,
    all_subsets,
    base_change,
    fixed_points,
    orbits,
    quotient_aset,
    restrict,
    smash_aset,
    subobject,
)
from .canon import canonical_form
from .enumerate import enumerate_asets
from .errors import FlavorUnavailable, NotAbelian, NotFiniteLength
from .monoid import (
    finite_length,
    group_plus,
    ideal_product,
    is_group_table,
    is_pc_monoid,
    localize,
    maximal_ideal,
    principal_ideal,
    quotient_monoid,
    units,
)
from .snf import (
    ClassMap,
    generates,
    left_kernel,
    presentation_group,
    subgroup_contains,
)

MONOID_FLAVORS = ("all", "pc", "free")
NSET_FLAVORS = ("nset", "fgnset")


@dataclass
class K0Presentation:
    generators: list
    keys: list
    relations: list  # sparse rows {generator index: coefficient}
    monoid: str
    flavor: str
    bound: int
    index: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {k: i for i, k in enumerate(self.keys)}

    @property
    def ngens(self):
        return len(self.generators)

    def lookup(self, obj):
        """Generator index of an object, or None when outside the bound."""
        return self.index.get(_key(obj, self.flavor))

    def matrix(self):
        return [[row.get(j, 0) for j in range(self.ngens)] for row in self.relations]

    def names(self):
        return [_describe(X, self.flavor) for X in self.generators]


def _key(X, flavor):
    if flavor == "nset":
        return ns.nset_key(X)
    if flavor == "fgnset":
        return ns.nset_key(ns.fgn_canonicalize(X))
    return canonical_form(X).key


def _describe(X, flavor):
    if flavor in NSET_FLAVORS:
        return "succ=" + ",".join(str(v) for v in X.succ)
    return X.name


def _relation(i, j, k):
    row = {}
    for idx, c in ((i, 1), (j, -1), (k, -1)):
        row[idx] = row.get(idx, 0) + c
    return {a: b for a, b in row.items() if b}


def _finish(gens, keys, rows, name, flavor, n):
    seen = set()
    rels = []
    for row in rows:
        t = tuple(sorted(row.items()))
        if t and t not in seen:
            seen.add(t)
            rels.append(row)
    rels.sort(key=lambda r: tuple(sorted(r.items())))
    return K0Presentation(gens, keys, rels, name, flavor, n)


def build_presentation(A, flavor, n):
    """Truncated presentation of K_0 of the chosen category.

    ``flavor`` is ``all``, ``pc`` or ``free`` for A-sets (``A`` a monoid), or
    ``nset`` / ``fgnset`` for N-sets (``A`` ignored). The pc flavor uses the
    A-set pc condition for any ``A``; that subcategory is closed under
    subobjects and quotients, so the relations are well defined.
    """
    if flavor in NSET_FLAVORS:
        return _nset_presentation(flavor, n)
    if flavor not in MONOID_FLAVORS:
        raise FlavorUnavailable(f"unknown flavor {flavor!r}")
    gens = enumerate_asets(A, n, flavor)
    keys = [canonical_form(X).key for X in gens]
    index = {k: i for i, k in enumerate(keys)}
    rows = []
    for i, X in enumerate(gens):
        for Y in all_subsets(X):
            S, _ = subobject(X, Y)
            Q, _ = quotient_aset(X, Y)
            j = index.get(canonical_form(S).key)
            k = index.get(canonical_form(Q).key)
            if j is None or k is None:
                continue
            rows.append(_relation(i, j, k))
    return _finish(gens, keys, rows, A.name, flavor, n)


def _nset_presentation(flavor, n):
    rows = []
    if flavor == "nset":
        gens = ns.enumerate_nsets(n)
        keys = [ns.nset_key(X) for X in gens]
        index = {k: i for i, k in enumerate(keys)}
        for i, X in enumerate(gens):
            for members in ns.nset_subsets(X):
                j = index.get(ns.nset_key(ns.nset_subobject(X, members)))
                k = index.get(ns.nset_key(ns.nset_quotient(X, members)))
                if j is not None and k is not None:
                    rows.append(_relation(i, j, k))
    else:
        gens = ns.enumerate_fgnsets(n)
        keys = [_key(X, "fgnset") for X in gens]
        index = {k: i for i, k in enumerate(keys)}
        for i, X in enumerate(gens):
            for Y in ns.fgn_subsets(X, max_offset=n):
                S = ns.fgn_subobject(X, Y)
                Q = ns.fgn_quotient(X, Y)
                j = index.get(_key(S, "fgnset"))
                k = index.get(_key(Q, "fgnset"))
                if j is not None and k is not None:
                    rows.append(_relation(i, j, k))
    return _finish(gens, keys, rows, "N", flavor, n)


def smith(P):
    """``(AbGroup, ClassMap)`` of a presentation; additivity is re-verified."""
    group, cmap = presentation_group(P.relations, P.ngens)
    bad = [r for r in P.relations if not cmap.is_zero(r)]
    if bad:
        raise AssertionError(f"class map not additive on {bad[0]}")  # pragma: no cover
    return group, cmap


def cardinality_scale(P, cmap):
    """``d`` when the group is ``Z`` and ``X -> |X| - 1`` is ``d`` times the
    coordinate (so an isomorphism onto ``dZ``), else None."""
    g = cmap.group
    sizes = [X.size for X in P.generators]
    if not all(sum(c * sizes[j] for j, c in r.items()) == 0 for r in P.relations):
        return None
    if g.free_rank != 1 or g.torsion:
        return None
    coords = [v[0] for v in cmap.vectors]
    pivot = next((i for i, c in enumerate(coords) if c), None)
    if pivot is None or sizes[pivot] % coords[pivot]:
        return None
    d = sizes[pivot] // coords[pivot]
    if d == 0 or any(s != d * c for s, c in zip(sizes, coords)):
        return None
    return abs(d)


def reduced_cardinality_check(P, cmap):
    """Is ``X -> |X| - 1`` an isomorphism from the presented group onto ``Z``
    (onto ``dZ`` when every generator size is a multiple of ``d``)?"""
    return cardinality_scale(P, cmap) is not None


def report(P, group, cmap, checks=None):
    """JSON-ready summary of a presentation and its group."""
    return {
        "monoid": P.monoid,
        "flavor": P.flavor,
        "bound": P.bound,
        "generators": P.names(),
        "relations": [sorted([j, c] for j, c in r.items()) for r in P.relations],
        "rank": group.free_rank,
        "torsion": list(group.torsion),
        "classmap": [list(v) for v in cmap.vectors],
        "checks": checks or {},
    }


def compute(A, flavor, n):
    P = build_presentation(A, flavor, n)
    group, cmap = smith(P)
    return P, group, cmap


# -- stabilization --------------------------------------------------------


def _transfer(Pn, Pm, cmap_m):
    """Images in the larger group of the smaller presentation's generators."""
    return [cmap_m.vectors[Pm.index[k]] for k in Pn.keys]


def stabilization_scan(A, flavor, n_min, n_max):
    """Group per bound plus whether each inclusion of bounds is an isomorphism."""
    rows = []
    prev = None
    for n in range(n_min, n_max + 1):
        P, group, cmap = compute(A, flavor, n)
        entry = {
            "bound": n,
            "generators": P.ngens,
            "relations": len(P.relations),
            "rank": group.free_rank,
            "torsion": list(group.torsion),
            "group": group.describe(),
        }
        if prev is not None:
            Pp, gp, _ = prev
            images = _transfer(Pp, P, cmap)
            surj = generates(group, images)
            same = (gp.free_rank, gp.torsion) == (group.free_rank, group.torsion)
            entry["compatible"] = all(k in P.index for k in Pp.keys)
            entry["iso_from_previous"] = bool(surj and same)
        rows.append(entry)
        prev = (P, group, cmap)
    return rows


# -- devissage ------------------------------------------------------------


def filtration(A, X):
    """``X > mX > m^2 X > ... > *`` for the maximal ideal ``m`` of ``A``."""
    m = set(maximal_ideal(A).members)
    out = [frozenset(X.points)]
    power = m
    while True:
        layer = frozenset({0}.union(*(X.act[a] for a in power)))
        out.append(layer)
        if layer == frozenset({0}):
            return out
        if layer == out[-2]:
            raise NotFiniteLength(f"filtration of {X.name} does not reach the base point")
        power = ideal_product(A, power, m)


def graded_pieces(A, X):
    """The pieces ``m^i X / m^{i+1} X`` as A-sets, in order."""
    layers = filtration(A, X)
    pieces = []
    for big, small in zip(layers, layers[1:]):
        S, inc = subobject(X, big)
        pos = {x: i for i, x in enumerate(inc.map)}
        Q, _ = quotient_aset(S, [pos[x] for x in small])
        pieces.append(Q)
    return pieces


def _acts_through_units(A, Q):
    """Non-units act as zero and units act freely."""
    U = set(units(A))
    for a in A.elements:
        if a in U:
            continue
        if any(Q.act[a][x] for x in range(1, Q.npoints)):
            return False
    return True


def _units_act_freely(A, Q):
    for a in units(A):
        if a == A.one:
            continue
        if any(Q.act[a][x] == x for x in range(1, Q.npoints)):
            return False
    return True


def devissage_check(A, n):
    """Class of every pc generator equals the sum of its graded pieces."""
    if finite_length(A) is None:
        raise NotFiniteLength(f"{A.name} has no finite length")
    P, group, cmap = compute(A, "pc", n)
    entries = []
    ok = True
    for i, X in enumerate(P.generators):
        pieces = graded_pieces(A, X)
        idx = [P.lookup(Q) for Q in pieces]
        combo = {i: 1}
        for j in idx:
            if j is None:
                continue
            combo[j] = combo.get(j, 0) - 1
        through = all(_acts_through_units(A, Q) for Q in pieces)
        free = all(_units_act_freely(A, Q) for Q in pieces)
        holds = None not in idx and cmap.is_zero(combo) and through
        ok &= holds
        entries.append(
            {
                "generator": X.name,
                "pieces": [Q.size for Q in pieces],
                "through_residue": through,
                "free_over_units": free,
                "identity": holds,
            }
        )
    return {
        "monoid": A.name,
        "bound": n,
        "length": finite_length(A),
        "group": group.describe(),
        "classes": entries,
        "holds": bool(ok),
    }


# -- localization ---------------------------------------------------------


def _localization_at(A, s, n, flavor, B, proj, L, jmap):
    PA, gA, cA = compute(A, flavor, n)
    PT, gT, cT = compute(B, flavor, n)
    PL, gL, cL = compute(L, flavor, n)
    # i_*: restriction of scalars along A ->> A/sA
    i_img = []
    for X in PT.generators:
        k = PA.lookup(restrict(proj, X))
        i_img.append(k)
    # j^*: base change along A -> A[1/s]
    j_img = []
    for X in PA.generators:
        j_img.append(PL.lookup(base_change(jmap, X)))
    missing = [k for k in i_img + j_img if k is None]

    def jvec(combo):
        image = {}
        for g, c in combo.items():
            image[j_img[g]] = image.get(j_img[g], 0) + c
        return cL.of(image)

    well_defined = all(not any(jvec(r)) for r in PA.relations)
    composite_zero = all(not any(jvec({k: 1})) for k in i_img)
    surjective = generates(gL, [jvec({g: 1}) for g in range(PA.ngens)])
    # kernel of j^* on generators, then membership in the image of i_*
    k = gL.ncoords
    C = [list(jvec({g: 1})) for g in range(PA.ngens)]
    for t, d in enumerate(gL.torsion):
        e = [0] * k
        e[t] = d
        C.append(e)
    if k:
        ker = [row[: PA.ngens] for row in left_kernel(C, k)]
    else:
        ker = [[int(a == b) for b in range(PA.ngens)] for a in range(PA.ngens)]
    im = [cA.vectors[j] for j in i_img]
    exact = all(
        subgroup_contains(gA, im, cA.of({g: c for g, c in enumerate(v) if c})) for v in ker
    )
    out = {
        "bound": n,
        "source": gT.describe(),
        "middle": gA.describe(),
        "target": gL.describe(),
        "outside_bound": len(missing),
        "well_defined": well_defined,
        "composite_zero": composite_zero,
        "surjective": surjective,
        "kernel_is_image": exact,
    }
    out["_sig"] = tuple(v for k, v in out.items() if k != "bound")
    return out


def localization_check(A, s, n, flavor="pc", stabilize=True, max_bound=None):
    """pi_0 exactness of ``K(A/sA) -> K(A) -> K(A[1/s]) -> 0`` at truncated level.

    With ``stabilize`` the bound is raised from ``n`` until two consecutive
    bounds give the same groups and kernel data (or ``max_bound`` is hit).
    """
    if not A.is_commutative():
        raise NotAbelian(f"{A.name} is not commutative")
    L, jmap = localize(A, s)
    B, proj = quotient_monoid(A, principal_ideal(A, s), name=f"{A.name}/{A.label(s)}")
    max_bound = max_bound if max_bound is not None else n + 2
    results = []
    bound = n
    while True:
        results.append(_localization_at(A, s, bound, flavor, B, proj, L, jmap))
        if not stabilize or bound >= max_bound:
            break
        if len(results) >= 2 and results[-1]["_sig"] == results[-2]["_sig"]:
            break
        bound += 1
    last = results[-1]
    stabilized = len(results) >= 2 and results[-1]["_sig"] == results[-2]["_sig"]
    for r in results:
        r.pop("_sig")
    holds = (
        last["well_defined"]
        and last["composite_zero"]
        and last["surjective"]
        and last["kernel_is_image"]
    )
    return {
        "monoid": A.name,
        "s": A.label(s),
        "ambient_pc": bool(is_pc_monoid(A)),
        "quotient": B.name,
        "localization": L.name,
        "localization_size": L.n,
        "stabilized": stabilized,
        "bounds": results,
        "holds": bool(holds),
    }


# -- Burnside ring --------------------------------------------------------


def _close(table, gens):
    S = {0} | set(gens)
    while True:
        new = {table[a][b] for a in S for b in S} - S
        if not new:
            return frozenset(S)
        S |= new


def subgroups(table):
    """Every subgroup of a group table, as frozensets of element indices."""
    k = len(table)
    cyc = {_close(table, [g]) for g in range(k)}
    found = set(cyc)
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyc:
                J = _close(table, H | C)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda H: (len(H), sorted(H)))


def _inverse(table):
    return [next(b for b in range(len(table)) if table[a][b] == 0) for a in range(len(table))]


def conjugacy_classes_of_subgroups(table):
    inv = _inverse(table)
    classes = []
    seen = set()
    for H in subgroups(table):
        if H in seen:
            continue
        cls = {frozenset(table[table[g][h]][inv[g]] for h in H) for g in range(len(table))}
        seen |= cls
        classes.append(sorted(cls, key=sorted))
    return classes


def coset_aset(table, H, name=None):
    """``(G/H)_+`` with ``G`` acting by left multiplication on left cosets."""
    cosets = []
    where = {}
    for g in range(len(table)):
        if g in where:
            continue
        c = frozenset(table[g][h] for h in H)
        for x in c:
            where[x] = len(cosets)
        cosets.append(min(c))
    Gp = group_plus(table)
    act = [[0] * (len(cosets) + 1) for _ in Gp.elements]
    act[Gp.one] = list(range(len(cosets) + 1))
    for g in range(len(table)):
        row = [0] + [where[table[g][r]] + 1 for r in cosets]
        act[g + 1] = row
    return FiniteASet(Gp, act, name=name or f"G/{len(H)}", check=False)


def _stabilizer(table, X, x):
    return frozenset(g for g in range(len(table)) if X.act[g + 1][x] == x)


@dataclass
class BurnsideResult:
    group: object
    classmap: ClassMap
    presentation: K0Presentation
    basis: list  # transitive G-sets, ordered by subgroup order
    subgroups: list  # representative subgroup per basis element
    marks: list
    products: list  # products[i][j] = coefficient vector over the basis

    def rank(self):
        return self.group.free_rank


def _transitive_index(P, X):
    return P.lookup(X)


def burnside(table, name="G"):
    """Burnside ring of a group given by its multiplication table."""
    if not is_group_table(table):
        raise ValueError("not a group table")
    Gp = group_plus(table, name=f"{name}+")
    k = len(table)
    P, group, cmap = compute(Gp, "all", k)
    classes = conjugacy_classes_of_subgroups(table)
    reps = [c[0] for c in classes]
    basis = [coset_aset(table, H, name=f"{name}/{len(H)}") for H in reps]
    order = sorted(range(len(basis)), key=lambda i: (len(reps[i]), canonical_form(basis[i]).key))
    reps = [reps[i] for i in order]
    basis = [basis[i] for i in order]
    cls_of = {}
    for ci, c in enumerate(classes):
        for H in c:
            cls_of[H] = ci
    rep_cls = [cls_of[H] for H in reps]
    marks = [
        [len(fixed_points(X, [g + 1 for g in H])) for H in reps]
        for X in basis
    ]
    bidx = {canonical_form(X).key: i for i, X in enumerate(basis)}

    def decompose(X):
        vec = [0] * len(basis)
        for orb in orbits(X):
            S, _ = subobject(X, orb)
            vec[bidx[canonical_form(S).key]] += 1
        return vec

    products = [[decompose(smash_aset(X, Y)) for Y in basis] for X in basis]
    # every orbit's stabilizer class should match its basis element
    for i, X in enumerate(basis):
        assert cls_of[_stabilizer(table, X, 1)] == rep_cls[i]
    return BurnsideResult(group, cmap, P, basis, reps, marks, products)


def burnside_report(table, name="G"):
    R = burnside(table, name)
    n = len(R.basis)
    lower = all(R.marks[i][j] == 0 for i in range(n) for j in range(n) if j > i)
    diag = all(R.marks[i][i] > 0 for i in range(n))
    # marks are a ring homomorphism: marks(X*Y) = marks(X) marks(Y) pointwise
    hom = all(
        [sum(R.products[i][j][b] * R.marks[b][c] for b in range(n)) for c in range(n)]
        == [R.marks[i][c] * R.marks[j][c] for c in range(n)]
        for i in range(n)
        for j in range(n)
    )
    basis_ok = generates(R.group, [R.classmap.vectors[R.presentation.lookup(X)] for X in R.basis])
    return {
        "group": name,
        "order": len(table),
        "rank": R.group.free_rank,
        "torsion": list(R.group.torsion),
        "subgroup_classes": len(conjugacy_classes_of_subgroups(table)),
        "subgroup_orders": [len(H) for H in R.subgroups],
        "marks": R.marks,
        "products": R.products,
        "checks": {
            "rank_matches_subgroup_classes": R.group.free_rank == n and not R.group.torsion,
            "transitive_basis": basis_ok,
            "marks_lower_triangular": lower,
            "marks_diagonal_positive": diag,
            "marks_multiplicative": hom,
        },
    }


# -- N-sets ---------------------------------------------------------------


def _vertices_off_cycles(X):
    return X.size - sum(len(c) for c in ns.cycles(X))


def g0_nset_reports(n):
    """The finite and the with-tails N-set groups at bound ``n``."""
    return {"finite": g0_finite_report(n), "tails": g0_tails_report(n)}


def g0_finite_report(n):
    P, group, cmap = compute(None, "nset", n)
    pt = P.lookup(ns.FunctionalNSet([0, 0]))
    loops = {d: P.lookup(ns.loop(d)) for d in range(1, n + 1)}
    basis = [pt] + [loops[d] for d in range(1, n + 1)]
    ok = True
    for i, X in enumerate(P.generators):
        combo = {i: 1}
        combo[pt] = combo.get(pt, 0) - _vertices_off_cycles(X)
        for c in ns.cycles(X):
            combo[loops[len(c)]] = combo.get(loops[len(c)], 0) - 1
        combo = {a: b for a, b in combo.items() if b}
        if combo and not cmap.is_zero(combo):
            ok = False
    return {
        **report(P, group, cmap),
        "basis": ["S0"] + [f"L{d}" for d in range(1, n + 1)],
        "checks": {
            "free_rank": group.free_rank == n + 1 and not group.torsion,
            "basis_generates": generates(group, [cmap.vectors[b] for b in basis]),
            "class_formula": ok,
            "point_is_zero": cmap.is_zero({P.lookup(ns.FunctionalNSet([0])): 1}),
        },
    }


def g0_tails_report(n):
    P, group, cmap = compute(None, "fgnset", n)
    N = P.lookup(ns.nat())
    floops = {d: P.lookup(ns.loop(d)) for d in range(1, n + 1)}
    basis = [N] + [floops[d] for d in range(1, n + 1)]
    ok = True
    for i, X in enumerate(P.generators):
        combo = {i: 1}
        if X.tails:
            combo[N] = combo.get(N, 0) - len(X.tails)
        for c in ns.cycles(X):
            combo[floops[len(c)]] = combo.get(floops[len(c)], 0) - 1
        combo = {a: b for a, b in combo.items() if b}
        if combo and not cmap.is_zero(combo):
            ok = False
    trees = [i for i, X in enumerate(P.generators) if not X.tails and not ns.cycles(X)]
    return {
        **report(P, group, cmap),
        "basis": ["N"] + [f"L{d}" for d in range(1, n + 1)],
        "checks": {
            "free_rank": group.free_rank == n + 1 and not group.torsion,
            "basis_generates": generates(group, [cmap.vectors[b] for b in basis]),
            "class_formula": ok,
            "trees_zero": all(cmap.is_zero({i: 1}) for i in trees),
            "point_is_zero": cmap.is_zero({P.lookup(ns.as_fgn(ns.FunctionalNSet([0]))): 1}),
        },
    }
