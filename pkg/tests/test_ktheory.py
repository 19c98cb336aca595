import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_factors

from kprime.aset import is_pc_aset
from kprime.enumerate import enumerate_asets
from kprime.errors import FlavorUnavailable, NotAbelian, NotPc
from kprime.ktheory import (
    build_presentation,
    burnside,
    burnside_report,
    cardinality_scale,
    compute,
    conjugacy_classes_of_subgroups,
    coset_aset,
    devissage_check,
    filtration,
    g0_finite_report,
    g0_tails_report,
    graded_pieces,
    localization_check,
    report,
    stabilization_scan,
    subgroups,
)
from kprime.monoid import (
    cyclic_group_table,
    cyclic_monoid,
    f1,
    group_plus,
    prototype,
    symmetric_group_table,
    truncated_polynomial,
    twisted_truncated_extension,
)


def oracle_group(P):
    """(free rank, torsion) of the presentation via sympy."""
    M = P.matrix()
    if not M:
        return P.ngens, []
    fs = [abs(int(v)) for v in sympy_factors(Matrix(M), domain=ZZ)]
    nz = [f for f in fs if f]
    return P.ngens - len(nz), sorted(f for f in nz if f > 1)


CASES = [
    (truncated_polynomial(2), "all", 4),
    (truncated_polynomial(3), "pc", 4),
    (prototype(1), "all", 4),
    (prototype(2), "pc", 4),
    (group_plus(cyclic_group_table(2)), "all", 4),
    (group_plus(cyclic_group_table(3)), "free", 6),
    (cyclic_monoid(1, 2), "all", 3),
    (None, "nset", 3),
    (None, "fgnset", 2),
]


@pytest.mark.parametrize("A, flavor, n", CASES, ids=lambda v: getattr(v, "name", str(v)))
def test_group_matches_sympy(A, flavor, n):
    P, group, cmap = compute(A, flavor, n)
    assert (group.free_rank, sorted(group.torsion)) == oracle_group(P)
    assert all(cmap.is_zero(r) for r in P.relations)
    assert group.check()


def test_frozen_groups():
    # values cross-checked against the sympy oracle above
    assert compute(prototype(1), "all", 4)[1].describe() == "Z^2"
    assert compute(group_plus(cyclic_group_table(2)), "all", 4)[1].describe() == "Z^2"
    assert compute(None, "nset", 3)[1].describe() == "Z^4"
    assert compute(None, "fgnset", 3)[1].describe() == "Z^4"


def test_point_is_zero():
    A = truncated_polynomial(2)
    P, group, cmap = compute(A, "all", 3)
    pt = next(i for i, X in enumerate(P.generators) if X.size == 0)
    assert cmap.is_zero({pt: 1})


@pytest.mark.parametrize("A", [f1(), truncated_polynomial(2), truncated_polynomial(4), prototype(3)], ids=lambda A: A.name)
def test_k_prime_is_z_with_cardinality(A):
    P, group, cmap = compute(A, "pc", 5)
    assert group.describe() == "Z"
    assert cardinality_scale(P, cmap) == 1


def test_free_flavor_scale():
    z2 = group_plus(cyclic_group_table(2))
    P, group, cmap = compute(z2, "free", 6)
    assert group.describe() == "Z"
    # free sets have even size, so cardinality lands in 2Z
    assert cardinality_scale(P, cmap) == 2


def test_unknown_flavor():
    with pytest.raises(FlavorUnavailable):
        build_presentation(f1(), "projective", 2)


def test_report_schema():
    P, group, cmap = compute(truncated_polynomial(2), "pc", 3)
    r = report(P, group, cmap, {"additivity": True})
    assert set(r) == {"monoid", "flavor", "bound", "generators", "relations", "rank", "torsion", "classmap", "checks"}
    assert r["rank"] == 1 and r["torsion"] == []
    assert len(r["classmap"]) == len(r["generators"])


def test_stabilization():
    rows = stabilization_scan(truncated_polynomial(2), "pc", 1, 4)
    assert [r["group"] for r in rows] == ["Z"] * 4
    assert all(r["iso_from_previous"] and r["compatible"] for r in rows[1:])


def test_filtration_and_devissage():
    A = truncated_polynomial(3)
    X = enumerate_asets(A, 3, "pc")[-1]
    chain = filtration(A, X)
    assert chain[0] == frozenset(X.points) and chain[-1] == frozenset({0})
    assert sum(Q.size for Q in graded_pieces(A, X)) == X.size
    rep = devissage_check(A, 4)
    assert rep["holds"] and rep["length"] == 3
    T = twisted_truncated_extension(group_plus(cyclic_group_table(3)), (0, 1, 3, 2), 2)
    rep = devissage_check(T, 4)
    assert rep["holds"] and all(c["free_over_units"] for c in rep["classes"])
    # no maximal ideal to filter by without pc
    with pytest.raises(NotPc):
        devissage_check(prototype(1), 3)


def test_localization_cases():
    rep = localization_check(truncated_polynomial(2), 2, 3)
    assert rep["holds"] and rep["stabilized"]
    assert rep["bounds"][-1]["target"] == "0"
    rep = localization_check(truncated_polynomial(3), 1, 3)
    assert rep["holds"] and rep["bounds"][-1]["source"] == "0"
    with pytest.raises(NotAbelian):
        T = twisted_truncated_extension(group_plus(cyclic_group_table(3)), (0, 1, 3, 2), 2)
        localization_check(T, 4, 2)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_prototype_pc_sets_are_killed_by_t(N):
    # every pc A-set is annihilated by t^N, so nothing survives inverting t
    A = prototype(N)
    tN = A.power(2, N)
    for X in enumerate_asets(A, 4, "pc"):
        assert is_pc_aset(X, strict=False)
        assert all(v == 0 for v in X.act[tN])
    rep = localization_check(A, 2, 3)
    last = rep["bounds"][-1]
    assert last["target"] == "Z" and not last["surjective"]
    assert last["composite_zero"] and last["kernel_is_image"]


def test_prototype_all_flavor_is_exact():
    rep = localization_check(prototype(1), 2, 3, flavor="all")
    last = rep["bounds"][-1]
    assert rep["holds"]
    assert (last["source"], last["middle"], last["target"]) == ("Z", "Z^2", "Z")


# -- Burnside --------------------------------------------------------------


def marks_oracle(table, reps):
    """|(G/H)^K| = #{gH : K gH = gH}, counted coset by coset."""
    n = len(table)
    out = []
    for H in reps:
        cosets = {frozenset(table[g][h] for h in H) for g in range(n)}
        row = []
        for K in reps:
            row.append(sum(1 for C in cosets if all(frozenset(table[k][c] for c in C) == C for k in K)))
        out.append(row)
    return out


@pytest.mark.parametrize(
    "table, classes",
    [
        (cyclic_group_table(1), 1),
        (cyclic_group_table(2), 2),
        (cyclic_group_table(4), 3),
        (cyclic_group_table(6), 4),
        (symmetric_group_table(3), 4),
    ],
    ids=["C1", "Z2", "Z4", "Z6", "S3"],
)
def test_burnside_against_marks_oracle(table, classes):
    R = burnside(table)
    assert len(conjugacy_classes_of_subgroups(table)) == classes
    assert R.rank() == classes
    assert R.marks == marks_oracle(table, R.subgroups)


def test_burnside_z2():
    rep = burnside_report(cyclic_group_table(2), "Z2")
    assert rep["marks"] == [[2, 0], [1, 1]]
    assert rep["products"][0][0] == [2, 0]
    assert rep["products"][1][1] == [0, 1]
    assert all(rep["checks"].values())


def test_subgroups_and_cosets():
    S3 = symmetric_group_table(3)
    assert sorted(len(H) for H in subgroups(S3)) == [1, 2, 2, 2, 3, 6]
    X = coset_aset(S3, subgroups(S3)[0])
    assert X.size == 6


def test_g0_nset_reports():
    fin = g0_finite_report(4)
    assert fin["rank"] == 5 and all(fin["checks"].values())
    tails = g0_tails_report(3)
    assert tails["rank"] == 4 and all(tails["checks"].values())
