"""Edge contributions on X_k and the blowup product they reduce to when k = 2."""
from agtlab import RatFunc
from agtlab.ale import Charge
from agtlab.edges import blowup_oracle_k2, edge_chern, edge_factor, rank_defect
from agtlab.exactalg import mpq

g = RatFunc.gens(["e1", "e2", "mu"])
e1, e2, mu = g["e1"], g["e2"], g["mu"]

for t in range(-3, 4):
    v = mpq(t, 2)
    ell = edge_factor((v,), 2, mu, e1, e2, patch_weights=False)[0]
    print(f"k=2, v={v}: ell = {ell}; blowup product agrees: {ell == blowup_oracle_k2(v, mu, e1, e2)}")

v = Charge((1, 1), 3).v
count = sum(m.sign for lst in edge_chern(v, 3) for m in lst)
print(f"k=3, u=(1,1): signed monomial count {count}, rank defect {rank_defect(v, 3)}")
