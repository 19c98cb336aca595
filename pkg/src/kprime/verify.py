"""End-to-end checks of the computable claims, one function per criterion.

Each check returns a :class:`CriterionResult`; ``run_all`` drives them for
the CLI and the acceptance tests.
"""

import math
import time
from dataclasses import dataclass, field
from itertools import product

from . import corpus
from .aset import action_defect, is_pc_aset
from .axioms import ALL_AXIOMS, DEFAULT_SEED, check_all, merge_reports
from .errors import NotPc
from .ktheory import (
    burnside_report,
    cardinality_scale,
    compute,
    devissage_check,
    g0_finite_report,
    g0_tails_report,
    localization_check,
)
from .monoid import (
    cyclic_group_table,
    f1,
    finite_length,
    group_plus,
    prototype,
    smash,
    symmetric_group_table,
    truncated_polynomial,
)
from .nset import FunctionalNSet, classify_nset, nset_key, to_truncated_aset

AXIOM_TARGET = 10_000


@dataclass
class CriterionResult:
    id: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self):
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.id}. {self.title} ({self.seconds:.1f}s)"


def _timed(cid, title, fn):
    t0 = time.perf_counter()
    passed, details = fn()
    return CriterionResult(cid, title, bool(passed), details, time.perf_counter() - t0)


# -- 1 --------------------------------------------------------------------


def floyd_has_cycle(succ):
    """Tortoise and hare from every vertex; True if some orbit avoids the base."""
    for start in range(1, len(succ)):
        slow = fast = start
        while True:
            slow = succ[slow]
            fast = succ[succ[fast]]
            if fast == 0 or slow == 0:
                break
            if slow == fast:
                return True
    return False


def check_pc_trees(max_vertices=6):
    total = 0
    mismatches = []
    reps = {}
    for k in range(max_vertices + 1):
        for tail in product(range(k + 1), repeat=k):
            succ = (0,) + tail
            total += 1
            X = FunctionalNSet(succ, check=False)
            tree = classify_nset(X).rooted_tree
            if tree == floyd_has_cycle(succ):
                mismatches.append(("classify", succ))
            key = nset_key(X)
            if key not in reps:
                reps[key] = (X, tree)
    pc_checked = 0
    for X, tree in reps.values():
        T = to_truncated_aset(X)
        if action_defect(T.monoid, T.act) is not None:
            mismatches.append(("action", X.succ))
            continue
        pc = bool(is_pc_aset(T, strict=False))
        pc_checked += 1
        if pc != tree:
            mismatches.append(("pc", X.succ))
    return not mismatches, {
        "raw_maps": total,
        "classes": len(reps),
        "pc_checked": pc_checked,
        "mismatches": mismatches[:10],
    }


# -- 2 --------------------------------------------------------------------


def k_prime_cases():
    z2 = group_plus(cyclic_group_table(2), name="Z2+")
    cases = [(f1(), "pc", 6)]
    cases += [(truncated_polynomial(n), "pc", 5) for n in (2, 3, 4)]
    cases += [(prototype(N), "pc", 5) for N in (1, 2, 3)]
    cases += [(z2, "free", 6)]
    return cases


def check_k_prime():
    out = {}
    ok = True
    for A, flavor, n in k_prime_cases():
        P, group, cmap = compute(A, flavor, n)
        scale = cardinality_scale(P, cmap)
        good = group.free_rank == 1 and not group.torsion and scale is not None
        ok &= good
        out[f"{A.name}/{flavor}/{n}"] = {
            "group": group.describe(),
            "generators": P.ngens,
            "relations": len(P.relations),
            "cardinality_scale": scale,
            "ok": good,
        }
    return ok, out


# -- 3, 4 -----------------------------------------------------------------


def check_g0_finite(n=5):
    rep = g0_finite_report(n)
    c = rep["checks"]
    ok = rep["rank"] == n + 1 and not rep["torsion"] and all(c.values())
    return ok, {"rank": rep["rank"], "torsion": rep["torsion"], "checks": c}


def check_g0_tails(n=4):
    rep = g0_tails_report(n)
    c = rep["checks"]
    ok = rep["rank"] == n + 1 and not rep["torsion"] and all(c.values())
    return ok, {"rank": rep["rank"], "torsion": rep["torsion"], "checks": c}


# -- 5 --------------------------------------------------------------------


BURNSIDE_GROUPS = [
    ("C1", cyclic_group_table(1), 1),
    ("Z2", cyclic_group_table(2), 2),
    ("Z3", cyclic_group_table(3), 2),
    ("Z4", cyclic_group_table(4), 3),
    ("S3", symmetric_group_table(3), 4),
]


def check_burnside():
    ok = True
    out = {}
    for name, table, rank in BURNSIDE_GROUPS:
        rep = burnside_report(table, name)
        good = rep["rank"] == rank == rep["subgroup_classes"] and all(rep["checks"].values())
        if name == "Z2":
            # [(Z/2)_+]^2 = 2 [(Z/2)_+]; the free orbit is the first basis element
            square = rep["products"][0][0]
            out["Z2_square"] = square
            good &= square == [2, 0]
        ok &= good
        out[name] = {"rank": rep["rank"], "marks": rep["marks"], "checks": rep["checks"]}
    return ok, out


# -- 6 --------------------------------------------------------------------


def check_axioms(seed=DEFAULT_SEED, target=AXIOM_TARGET):
    monoids = corpus.monoids()
    per = math.ceil(target / len(monoids))
    merged = merge_reports(check_all(A, per, seed) for A in monoids.values())
    ok = all(r.tested >= target and not r.failures for r in merged) and len(merged) == len(ALL_AXIOMS)
    return ok, {
        "seed": seed,
        "monoids": len(monoids),
        "per_monoid": per,
        "axioms": {r.axiom: {"tested": r.tested, "failures": len(r.failures)} for r in merged},
        "first_failures": [f for r in merged for f in r.failures][:3],
    }


# -- 7 --------------------------------------------------------------------


def finite_length_corpus():
    out = []
    for A in corpus.monoids().values():
        try:
            if finite_length(A) is not None:
                out.append(A)
        except NotPc:
            continue
    return out


def check_devissage(n=5):
    ok = True
    out = {}
    for A in finite_length_corpus():
        rep = devissage_check(A, n)
        ok &= rep["holds"]
        out[A.name] = {"classes": len(rep["classes"]), "length": rep["length"], "holds": rep["holds"]}
    return ok, out


# -- 8 --------------------------------------------------------------------


def localization_cases():
    z2 = group_plus(cyclic_group_table(2), name="Z2+")
    t = 2  # index of t in the constructors below
    cases = [(prototype(N), t) for N in (1, 2, 3)]
    cases.append((truncated_polynomial(2), t))
    A = smash(truncated_polynomial(3), z2, name="N/t3^Z2+")
    s = next(a for a in A.elements if A.label(a) == "(t,1)")
    cases.append((A, s))
    for B in (truncated_polynomial(3), z2, f1()):
        cases.append((B, B.one))
    return cases


def check_localization(n=3):
    ok = True
    out = {}
    for A, s in localization_cases():
        rep = localization_check(A, s, n)
        last = rep["bounds"][-1]
        ok &= rep["holds"] and rep["stabilized"]
        out[f"{A.name}, {A.label(s)}"] = {
            "holds": rep["holds"],
            "stabilized": rep["stabilized"],
            "ambient_pc": rep["ambient_pc"],
            "sequence": f"{last['source']} -> {last['middle']} -> {last['target']} -> 0",
            "composite_zero": last["composite_zero"],
            "surjective": last["surjective"],
            "kernel_is_image": last["kernel_is_image"],
        }
    return ok, out


CRITERIA = [
    (1, "pc N-sets are exactly the rooted trees", check_pc_trees),
    (2, "K'_0 = Z with reduced cardinality", check_k_prime),
    (3, "G_0 of finite N-sets at bound 5", check_g0_finite),
    (4, "G_0 of N-sets with tails at bound 4", check_g0_tails),
    (5, "Burnside rings and tables of marks", check_burnside),
    (6, "axiom suites, randomized", check_axioms),
    (7, "devissage identity", check_devissage),
    (8, "localization exactness at pi_0", check_localization),
]


def run(cid, **kwargs):
    for i, title, fn in CRITERIA:
        if i == cid:
            return _timed(i, title, lambda: fn(**kwargs))
    raise KeyError(cid)


def run_all(seed=DEFAULT_SEED, only=None):
    results = []
    for i, title, fn in CRITERIA:
        if only and i not in only:
            continue
        kwargs = {"seed": seed} if fn is check_axioms else {}
        results.append(_timed(i, title, lambda: fn(**kwargs)))
    return results
