import random

import pytest

from kprime import axioms
from kprime.axioms import (
    ACGW,
    ALL_AXIOMS,
    CGW,
    QUASI_EXACT,
    AxiomReport,
    Sampler,
    check_acgw,
    check_all,
    check_cgw,
    check_quasi_exact,
    merge_reports,
)
from kprime.monoid import FiniteMonoid, cyclic_group_table, group_plus, prototype, truncated_polynomial

MONOIDS = [
    truncated_polynomial(3),
    prototype(2),
    group_plus(cyclic_group_table(2)),
    FiniteMonoid([[0, 0, 0], [0, 1, 2], [0, 2, 2]], name="idem"),
]


def test_axiom_names():
    assert sorted(QUASI_EXACT) == ["qe-i", "qe-ii", "qe-iii", "qe-iv"]
    assert len(CGW) == 6 and len(ACGW) == 5
    assert len(ALL_AXIOMS) == 15


@pytest.mark.parametrize("A", MONOIDS, ids=lambda A: A.name)
def test_no_counterexamples(A):
    reports = check_all(A, samples=60)
    assert [r.axiom for r in reports] == list(ALL_AXIOMS)
    for r in reports:
        assert r.tested == 60
        assert r.ok, r.failures[:1]


def test_reproducible_by_seed():
    A = truncated_polynomial(2)
    a = [r.to_dict() for r in check_cgw(A, 40, seed=5)]
    b = [r.to_dict() for r in check_cgw(A, 40, seed=5)]
    assert a == b
    smp = Sampler(A)
    draws = []
    for _ in range(2):
        rng = random.Random("x")
        draws.append([smp.aset(rng).act for _ in range(20)])
    assert draws[0] == draws[1]


def test_suites_split():
    A = truncated_polynomial(2)
    assert len(check_quasi_exact(A, 5)) == 4
    assert len(check_cgw(A, 5)) == 6
    assert len(check_acgw(A, 5)) == 5


def test_merge_and_schema():
    a = AxiomReport("cgw-Z", 10, [], 1)
    b = AxiomReport("cgw-Z", 5, [{"check": "x"}], 1)
    m = a.merge(b)
    assert m.tested == 15 and not m.ok
    assert set(m.to_dict()) == {"axiom", "tested", "failures", "seed"}
    with pytest.raises(ValueError):
        a.merge(AxiomReport("cgw-I", 1))
    merged = merge_reports([[a], [b]])
    assert len(merged) == 1 and merged[0].tested == 15


def test_broken_quotient_is_caught(monkeypatch):
    # a quotient that forgets to collapse the subset must trip the checks
    real = axioms.quotient_aset

    def broken(X, Y, name=None):
        Q, p = real(X, frozenset({0}), name=name)
        return Q, p

    monkeypatch.setattr(axioms, "quotient_aset", broken)
    reports = check_quasi_exact(truncated_polynomial(2), samples=50)
    assert any(not r.ok for r in reports)
