"""Truncated Grothendieck groups from enumeration and Smith normal form.

Run with ``python3 demos/grothendieck_groups.py``.
"""

from kprime.ktheory import (
    burnside_report,
    cardinality_scale,
    compute,
    devissage_check,
    g0_finite_report,
    stabilization_scan,
)
from kprime.monoid import cyclic_group_table, group_plus, symmetric_group_table, truncated_polynomial

print("K'_0 of N/t^n: one generator per pc class, one relation per subobject")
for n in (2, 3, 4):
    A = truncated_polynomial(n)
    P, group, cmap = compute(A, "pc", 5)
    print(
        f"  {A.name}: {P.ngens} classes, {len(P.relations)} relations -> {group.describe()},"
        f" class = {cardinality_scale(P, cmap)} x (non-base points)"
    )

print()
print("The answer does not move as the bound grows")
for row in stabilization_scan(truncated_polynomial(3), "pc", 1, 5):
    print(f"  bound {row['bound']}: {row['group']}, iso from previous {row.get('iso_from_previous', '-')}")

print()
print("Devissage over N/t^3: every class is the sum of its graded pieces")
rep = devissage_check(truncated_polynomial(3), 4)
print(f"  {len(rep['classes'])} classes checked, identity holds: {rep['holds']}")

print()
print("Finite N-sets")
rep = g0_finite_report(4)
print(f"  rank {rep['rank']}, checks {rep['checks']}")

print()
print("Free (Z/2)_+ sets have even size, so cardinality is twice the coordinate")
P, group, cmap = compute(group_plus(cyclic_group_table(2)), "free", 6)
print(f"  {group.describe()}, scale {cardinality_scale(P, cmap)}")

print()
print("Burnside ring of S3")
rep = burnside_report(symmetric_group_table(3), "S3")
print(f"  rank {rep['rank']}, subgroup orders {rep['subgroup_orders']}")
for row in rep["marks"]:
    print("   ", " ".join(f"{v:>2}" for v in row))
