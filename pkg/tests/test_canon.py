import random

from hypothesis import given, settings
from hypothesis import strategies as st

from kprime.aset import is_equivariant, relabel
from kprime.canon import canonical_aset, canonical_form, iso_test
from kprime.enumerate import enumerate_asets
from kprime.monoid import cyclic_group_table, group_plus, prototype, smash, truncated_polynomial

from conftest import brute_canonical

POOL = (
    enumerate_asets(truncated_polynomial(3), 4)
    + enumerate_asets(prototype(1), 4)
    + enumerate_asets(smash(truncated_polynomial(2), group_plus(cyclic_group_table(2))), 3)
)


def shuffled(X, rng):
    rest = list(range(1, X.npoints))
    rng.shuffle(rest)
    return relabel(X, [0] + rest)[0]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(POOL), st.randoms(use_true_random=False))
def test_key_is_label_invariant(X, rng):
    Y = shuffled(X, rng)
    assert canonical_form(X).key == canonical_form(Y).key
    f = iso_test(Y, X)
    assert f is not None and f.is_iso() and is_equivariant(Y, X, f.map)


def test_keys_separate_like_brute_force():
    by_key = {}
    by_brute = {}
    for i, X in enumerate(POOL):
        by_key.setdefault((X.monoid.mul, canonical_form(X).key), set()).add(i)
        by_brute.setdefault((X.monoid.mul, brute_canonical(X)), set()).add(i)
    assert sorted(map(sorted, by_key.values())) == sorted(map(sorted, by_brute.values()))


def test_perm_relabels_to_key():
    rng = random.Random(3)
    for X in POOL[:30]:
        Y = shuffled(X, rng)
        cf = canonical_form(Y)
        Z, _ = relabel(Y, cf.perm)
        assert Z.act == cf.key[1]
        assert canonical_aset(Y).act == cf.key[1]


def test_non_isomorphic():
    A = truncated_polynomial(3)
    Xs = enumerate_asets(A, 3)
    for X in Xs:
        for Y in Xs:
            if X is not Y:
                assert iso_test(X, Y) is None
