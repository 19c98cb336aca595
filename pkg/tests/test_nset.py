import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kprime.aset import action_defect, is_pc_aset
from kprime.errors import NotClosed
from kprime.nset import (
    TAIL,
    FgNSet,
    FunctionalNSet,
    FgSubset,
    canonical_nset,
    classify_nset,
    cycles,
    depth,
    enumerate_fgnsets,
    enumerate_nsets,
    fgn_canonicalize,
    fgn_iso,
    fgn_quotient,
    fgn_subobject,
    fgn_subsets,
    loop,
    nat,
    nset_iso,
    nset_key,
    nset_quotient,
    nset_subobject,
    nset_subsets,
    path,
    to_dot,
    to_truncated_aset,
)
from kprime.verify import floyd_has_cycle

# rooted trees on k + 1 nodes (OEIS A000081)
ROOTED_TREES = [1, 1, 2, 4, 9, 20]


def succ_maps(max_k=6):
    return st.integers(0, max_k).flatmap(
        lambda k: st.lists(st.integers(0, k), min_size=k, max_size=k).map(lambda t: (0,) + tuple(t))
    )


def relabelled(succ, perm):
    """``perm[old] = new`` with ``perm[0] = 0``."""
    out = [0] * len(succ)
    for v, s in enumerate(succ):
        out[perm[v]] = TAIL if s == TAIL else perm[s]
    return tuple(out)


def brute_key(succ):
    k = len(succ) - 1
    return min(relabelled(succ, (0,) + p) for p in itertools.permutations(range(1, k + 1)))


@settings(max_examples=300, deadline=None)
@given(succ_maps())
def test_classification_matches_floyd(succ):
    X = FunctionalNSet(succ)
    assert classify_nset(X).rooted_tree == (not floyd_has_cycle(succ))


@settings(max_examples=200, deadline=None)
@given(succ_maps(), st.randoms(use_true_random=False))
def test_key_is_label_invariant(succ, rng):
    rest = list(range(1, len(succ)))
    rng.shuffle(rest)
    Y = relabelled(succ, [0] + rest)
    X1, X2 = FunctionalNSet(succ), FunctionalNSet(Y)
    assert nset_key(X1) == nset_key(X2)
    f = nset_iso(X1, X2)
    assert f is not None
    assert all(f[X1.succ[v]] == X2.succ[f[v]] for v in range(len(succ)))
    assert canonical_nset(X1).succ == canonical_nset(X2).succ


@settings(max_examples=200, deadline=None)
@given(succ_maps(5))
def test_truncated_aset_is_valid_and_pc_iff_tree(succ):
    X = FunctionalNSet(succ)
    T = to_truncated_aset(X)
    assert action_defect(T.monoid, T.act) is None
    assert bool(is_pc_aset(T, strict=False)) == classify_nset(X).rooted_tree


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_enumeration_against_brute_force(n):
    brute = {brute_key(s) for k in range(n + 1) for s in itertools.product(range(k + 1), repeat=k) for s in [(0,) + s]}
    ours = enumerate_nsets(n)
    assert len(ours) == len(brute)
    trees = [X for X in ours if classify_nset(X).rooted_tree and X.size == n]
    assert len(trees) == ROOTED_TREES[n]


def test_tree_count_at_five():
    trees = [X for X in enumerate_nsets(5) if classify_nset(X).rooted_tree and X.size == 5]
    assert len(trees) == ROOTED_TREES[5]


def test_shapes():
    rho = FunctionalNSet([0, 2, 3, 4, 2])
    assert classify_nset(rho).loops == (3,)
    assert sorted(len(c) for c in cycles(rho)) == [3]
    assert depth(rho) == 1
    assert depth(path(4)) == 4
    assert classify_nset(loop(2)).loops == (2,)
    assert classify_nset(path(3)).rooted_tree


def test_finite_subsets_and_quotients():
    X = path(3)
    subs = nset_subsets(X)
    assert sorted(map(sorted, subs)) == [[0], [0, 1], [0, 1, 2], [0, 1, 2, 3]]
    S = nset_subobject(X, {0, 1})
    Q = nset_quotient(X, {0, 1})
    assert nset_key(S) == nset_key(path(1))
    assert nset_key(Q) == nset_key(path(2))


def test_fgn_canonicalize_rolls_back():
    # 1 -> 2 -> tail is the free N-set on 1
    X = FgNSet([0, 2, TAIL])
    assert fgn_canonicalize(X).succ == nat().succ
    assert fgn_iso(X, nat()) is not None


def test_fgn_subsets_and_quotients():
    N = nat()
    subs = fgn_subsets(N, max_offset=3)
    assert [s.offsets for s in subs] == [(), ((1, 1),), ((1, 2),), ((1, 3),), ()]
    Y = FgSubset(frozenset({0}), ((1, 2),))
    Q = fgn_quotient(N, Y)
    assert isinstance(Q, FunctionalNSet) and nset_key(Q) == nset_key(path(2))
    S = fgn_subobject(N, Y)
    assert fgn_iso(S, N) is not None
    with pytest.raises(NotClosed):
        fgn_quotient(N, FgSubset(frozenset({0}), ((1, 0),)))


def test_fgn_enumeration_small():
    Xs = enumerate_fgnsets(2)
    keys = {nset_key(X) for X in Xs}
    assert len(keys) == len(Xs)
    # finite cores: 1 + 2 + 6 (from the brute force above); with tails:
    # one tail; tail plus a point to base; tail plus a fixed point; two tails
    assert len([X for X in Xs if not X.tails]) == 9
    assert sorted(X.succ for X in Xs if X.tails) == [(0, -1), (0, -1, -1), (0, -1, 2), (0, 0, -1)]


def test_to_dot():
    text = to_dot(FgNSet([0, TAIL, 1]))
    assert "1 -> t1" in text and "2 -> 1" in text
