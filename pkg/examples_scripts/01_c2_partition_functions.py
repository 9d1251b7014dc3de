"""Instanton sums on C^2 and the closed forms they should match.

Run with ``python3 examples_scripts/01_c2_partition_functions.py``.
"""
from agtlab import QuiverSpec, RatFunc, closed_forms_c2, z_quiver_c2
from agtlab.exactalg import mpq, sample_assignment

g = RatFunc.gens(["e1", "e2", "mu"])
e1, e2, mu = g["e1"], g["e2"], g["mu"]

# Pure theory: a sum over single partitions weighted by 1/tangent Euler class.
pure = z_quiver_c2(QuiverSpec("pure"), 3, e1, e2)
print("pure, through q^3:")
for n in range(4):
    print(f"  q^{n}:", pure.coefficient((mpq(n),)))
print("matches exp(q/(e1 e2)):", pure.difference(closed_forms_c2(QuiverSpec("pure"), 3, e1, e2)) == [])

# Adjoint matter with mass mu: the sum reproduces a power of the Dedekind eta function.
spec = QuiverSpec("A_hat", 0, (mu,))
z = z_quiver_c2(spec, 3, e1, e2)
print("adjoint theory agrees with its eta product:", z.difference(closed_forms_c2(spec, 3, e1, e2)) == [])

# The same comparison at a random rational point is much cheaper and is what sampled mode does.
s = sample_assignment(["e1", "e2", "mu"], 0)
zs = z_quiver_c2(QuiverSpec("A_hat", 0, (s["mu"],)), 6, s["e1"], s["e2"])
print("sampled point", {k: str(v) for k, v in s.items()})
print("  agrees through q^6:", zs.difference(closed_forms_c2(QuiverSpec("A_hat", 0, (s["mu"],)), 6, s["e1"], s["e2"])) == [])
