"""Pure gauge theory on the resolved A_{k-1} singularity X_k.

The fixed-point sum runs over lattice charges and k-tuples of partitions;
the closed form is eta^(k-1) times an affine character times exp(q/(k e1 e2)).
"""
from agtlab import closed_forms_ale, z_pure_ale
from agtlab.ale import Charge, enumerate_charges
from agtlab.exactalg import sample_assignment

k = 3
print("charges of holonomy 0 with Delta <= 1 on X_3:")
for c in enumerate_charges(0, k, 1):
    print(f"  u={c.u}  v={tuple(str(x) for x in c.v)}  Delta={c.delta}")

print("Charge((1,), 2):", Charge((1,), 2).j, Charge((1,), 2).delta)

s = sample_assignment(["e1", "e2"], 3)
for j in range(k):
    a = z_pure_ale(k, j, 2, e1=s["e1"], e2=s["e2"])
    b = closed_forms_ale("pure", k, j, 2, e1=s["e1"], e2=s["e2"])
    print(f"k={k}, j={j}: matches closed form: {a.difference(b) == []}")
