"""One test per acceptance criterion; a PASS/FAIL line is printed for each.

Criteria are exact (no numeric tolerance). Runtime budgets are in seconds.
"""

import pytest

from kprime import verify

from conftest import ACCEPTANCE

BUDGET = {1: 60.0, 2: 120.0, 6: 300.0}


@pytest.mark.parametrize("cid", [c[0] for c in verify.CRITERIA], ids=lambda c: f"criterion-{c}")
def test_criterion(cid):
    r = verify.run(cid)
    budget = BUDGET.get(cid)
    if budget is not None and r.seconds > budget:
        r.passed = False
        r.details["over_budget"] = f"{r.seconds:.1f}s > {budget:.0f}s"
    ACCEPTANCE.append(r)
    print(r.line())
    assert r.passed, r.details
