"""Localization sequences K'_0(A/sA) -> K'_0(A) -> K'_0(A[1/s]) -> 0.

Run with ``python3 demos/localization.py``. The last case shows why a
non-pc ambient monoid breaks surjectivity: every pc set over it is killed
by a power of ``t``, so nothing survives inverting ``t``.
"""

from kprime.enumerate import enumerate_asets
from kprime.ktheory import localization_check
from kprime.monoid import cyclic_group_table, group_plus, prototype, smash, truncated_polynomial


def show(A, s, flavor="pc"):
    rep = localization_check(A, s, 3, flavor=flavor)
    last = rep["bounds"][-1]
    print(
        f"  {A.name}, s = {rep['s']} ({flavor}): {last['source']} -> {last['middle']} -> {last['target']} -> 0"
        f"  exact {rep['holds']} (surjective {last['surjective']}, ker = im {last['kernel_is_image']})"
    )


z2 = group_plus(cyclic_group_table(2), name="Z2+")
A = smash(truncated_polynomial(3), z2, name="N/t3^Z2+")
t1 = next(a for a in A.elements if A.label(a) == "(t,1)")

print("pc ambient monoids")
show(truncated_polynomial(2), 2)
show(A, t1)
show(truncated_polynomial(3), 1)

print()
print("t^2 = t^3 is not pc")
P = prototype(2)
killed = all(all(v == 0 for v in X.act[P.power(2, 2)]) for X in enumerate_asets(P, 4, "pc"))
print(f"  t^2 kills every pc set up to 4 points: {killed}")
show(P, 2)
show(P, 2, flavor="all")
