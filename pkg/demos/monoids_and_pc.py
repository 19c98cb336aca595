"""Walk through pointed monoids and partial cancellation.

Run with ``python3 demos/monoids_and_pc.py``.
"""

from kprime.aset import is_pc_aset, regular_aset
from kprime.monoid import (
    FiniteMonoid,
    cyclic_group_table,
    finite_length,
    group_plus,
    is_pc_monoid,
    prototype,
    smash,
    truncated_polynomial,
    units,
)
from kprime.nset import FunctionalNSet, classify_nset, to_truncated_aset


def show(A):
    d = is_pc_monoid(A)
    line = f"{A.name:>12}: {A.n} elements, {len(units(A))} units, pc {d.holds}"
    if d.holds:
        line += f", length {finite_length(A)}"
    else:
        b, a, c = d.witness
        line += f" ({d.note}: {A.label(b)}, {A.label(a)} against {A.label(c)})"
    print(line)


print("Monoids")
idem = FiniteMonoid([[0, 0, 0], [0, 1, 2], [0, 2, 2]], name="idem", names=["*", "1", "e"])
for A in (
    truncated_polynomial(3),
    group_plus(cyclic_group_table(3), name="Z3+"),
    smash(truncated_polynomial(2), truncated_polynomial(2)),
    prototype(2),
    idem,
):
    show(A)

print()
print("The regular set of N/t^3 is pc:", bool(is_pc_aset(regular_aset(truncated_polynomial(3)))))

print()
print("N-sets as successor graphs")
for name, succ in [("path", [0, 0, 1, 2]), ("fork", [0, 0, 1, 1]), ("loop", [0, 2, 3, 1]), ("rho", [0, 2, 3, 4, 2])]:
    X = FunctionalNSet(succ, name=name)
    cls = classify_nset(X)
    T = to_truncated_aset(X)
    pc = bool(is_pc_aset(T, strict=False))
    print(f"  {name:>5} {succ}: {cls.kind}, loops {list(cls.loops)}, acts through {T.monoid.name}, pc {pc}")
