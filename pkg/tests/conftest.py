import itertools

import pytest

from kprime.aset import FiniteASet, relabel
from kprime.monoid import (
    FiniteMonoid,
    cyclic_group_table,
    f1,
    group_plus,
    prototype,
    smash,
    truncated_polynomial,
)

ACCEPTANCE = []


def small_monoids():
    z2 = group_plus(cyclic_group_table(2), name="Z2+")
    return [
        f1(),
        truncated_polynomial(2),
        truncated_polynomial(3),
        prototype(1),
        prototype(2),
        z2,
        smash(truncated_polynomial(2), z2, name="N/t2^Z2+"),
        FiniteMonoid([[0, 0, 0], [0, 1, 2], [0, 2, 2]], name="idem"),
    ]


def brute_canonical(X):
    """Lexicographically least action table over all relabellings; slow oracle."""
    best = None
    m = X.npoints
    for perm in itertools.permutations(range(1, m)):
        Y, _ = relabel(X, (0,) + perm)
        if best is None or Y.act < best:
            best = Y.act
    return best


def brute_classes(asets):
    """Deduplicate A-sets with the brute-force oracle."""
    return {brute_canonical(X) for X in asets}


@pytest.fixture
def ntr3():
    return truncated_polynomial(3)


@pytest.fixture
def regular_ntr3(ntr3):
    return FiniteASet(ntr3, [list(r) for r in ntr3.mul], name="A")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(ACCEPTANCE, key=lambda r: r.id):
        terminalreporter.write_line(r.line())
