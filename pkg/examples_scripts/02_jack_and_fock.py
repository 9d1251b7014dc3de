"""Jack functions as eigenstates of the Calogero-Sutherland integrals on a Fock space."""
from agtlab import RatFunc
from agtlab.exactalg import mpq
from agtlab.fock import FockSpace, integrals_of_motion, sym_to_fock
from agtlab.partitions import partitions
from agtlab.symfunc import jack_table

g = RatFunc.gens(["e1", "e2"])
e1, e2 = g["e1"], g["e2"]
space = FockSpace.rank_k(1, e1, e2)
table = jack_table(3, space.beta(1))

for n in range(4):
    for lam in partitions(n):
        J = sym_to_fock(table.jack(lam))
        I2 = integrals_of_motion(space, 2, J)
        eig = -sum(((a - 1) * e1 + (b - 1) * e2 for a, b in lam.cells()), 0 * e1)
        print(f"J_{tuple(lam)}: I_1 eigenvalue {n}, I_2 eigenvalue {eig}, "
              f"checks {integrals_of_motion(space, 1, J) == J.scale(mpq(n)) and I2 == J.scale(eig)}")
