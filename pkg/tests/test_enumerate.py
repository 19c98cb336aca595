import itertools

import pytest

from kprime.aset import FiniteASet, action_defect, free_aset, is_pc_aset
from kprime.canon import canonical_key
from kprime.enumerate import all_actions, enumerate_asets
from kprime.monoid import cyclic_group_table, group_plus, prototype, truncated_polynomial

from conftest import brute_canonical, small_monoids


def naive_classes(A, m, pc=False):
    """Every table with * and 1 fixed, filtered by the action axioms; slow oracle."""
    free = [a for a in A.elements if a not in (0, A.one)]
    maps = list(itertools.product(range(m), repeat=m - 1))
    found = set()
    for choice in itertools.product(maps, repeat=len(free)):
        act = [None] * A.n
        act[0] = [0] * m
        act[A.one] = list(range(m))
        for a, mp in zip(free, choice):
            act[a] = [0] + list(mp)
        if action_defect(A, act) is not None:
            continue
        X = FiniteASet(A, act, check=False)
        if pc and not is_pc_aset(X, strict=False):
            continue
        found.add(brute_canonical(X))
    return len(found)


def counts(Xs, upto):
    return [sum(1 for X in Xs if X.npoints == m) for m in range(1, upto + 1)]


@pytest.mark.parametrize("A", small_monoids(), ids=lambda A: A.name)
@pytest.mark.parametrize("flavor", ["all", "pc"])
def test_counts_match_naive_oracle(A, flavor):
    lim = 4 if A.n <= 3 else 3
    Xs = enumerate_asets(A, lim - 1, flavor)
    assert counts(Xs, lim) == [naive_classes(A, m, flavor == "pc") for m in range(1, lim + 1)]


@pytest.mark.parametrize(
    "A, flavor, expected",
    [
        (truncated_polynomial(2), "all", [1, 1, 2, 3]),
        (prototype(1), "all", [1, 2, 4, 7]),
        (prototype(1), "pc", [1, 1, 1, 1]),
        (group_plus(cyclic_group_table(2)), "pc", [1, 0, 1, 0]),
    ],
    ids=["ntr2-all", "proto1-all", "proto1-pc", "z2-pc"],
)
def test_frozen_counts(A, flavor, expected):
    # values from the naive oracle above
    assert counts(enumerate_asets(A, len(expected) - 1, flavor), len(expected)) == expected


def test_results_are_distinct_and_canonical():
    A = truncated_polynomial(3)
    Xs = enumerate_asets(A, 4, "all")
    keys = [canonical_key(X) for X in Xs]
    assert len(set(keys)) == len(keys)
    assert all(X.act == k[1] for X, k in zip(Xs, keys))
    assert all(action_defect(A, X.act) is None for X in Xs)


def test_pc_is_subset_of_all():
    A = prototype(2)
    every = {canonical_key(X) for X in enumerate_asets(A, 3, "all")}
    pc = [X for X in enumerate_asets(A, 3, "pc")]
    assert all(canonical_key(X) in every for X in pc)
    assert all(is_pc_aset(X, strict=False) for X in pc)


def test_free_flavor():
    z2 = group_plus(cyclic_group_table(2))
    Xs = enumerate_asets(z2, 5, "free")
    assert [X.size for X in Xs] == [0, 2, 4]
    assert canonical_key(Xs[2]) == canonical_key(free_aset(z2, 2))


def test_all_actions_labelled():
    A = truncated_polynomial(2)
    tables = all_actions(A, 3)
    # t acts on {1, 2} with t^2 = *: maps f with f(f(x)) = 0
    naive = [f for f in itertools.product(range(3), repeat=2) if all(([0] + list(f))[([0] + list(f))[x]] == 0 for x in (1, 2))]
    assert len(tables) == len(naive)


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_asets(truncated_polynomial(2), 2, "bogus")
    with pytest.raises(ValueError):
        enumerate_asets(truncated_polynomial(2), -1)
