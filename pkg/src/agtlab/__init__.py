"""Exact checks of instanton partition functions on C^2 and on ALE spaces X_k
against their conformal-field-theory duals.

Modules
-------
exactalg      rationals, rational functions, quadratic extensions, truncated q-series
partitions    partitions, tuples of partitions, hooks
symfunc       symmetric functions and Jack functions
nekrasov_c2   fixed-point sums and product formulas on C^2
ale           the A_(k-1) lattice, charges, characters
edges         edge contributions of fractional charges on X_k
nekrasov_ale  fixed-point sums and product formulas on X_k
fock          Fock spaces, vertex operators, Frenkel-Kac and Virasoro actions
suites        acceptance suites shared by the tests and the command line
cli           the ``agt-lab`` command
"""
from .exactalg import QSeries, QuadExt, RatFunc, mpq, sample_assignment, series_compose
from .partitions import Partition, enumerate_tuples, partitions
from .symfunc import JackTable, SymVector, basis_convert, inner_product, jack_table, p1_power_in_jack
from .nekrasov_c2 import QuiverSpec, closed_forms_c2, cyclic_trace, m_bifund, z_quiver_c2
from .ale import ALESpace, Charge, cartan_inverse, cartan_matrix, character_chi, enumerate_charges
from .edges import blowup_oracle_k2, edge_chern, edge_factor, rank_defect
from .nekrasov_ale import ALEQuiverSpec, agt_report, closed_forms_ale, z_pure_ale, z_quiver_ale
from .fock import FockSpace, FockVector, gen

__version__ = "0.1.0"

__all__ = [
    "QSeries", "QuadExt", "RatFunc", "mpq", "sample_assignment", "series_compose",
    "Partition", "enumerate_tuples", "partitions",
    "JackTable", "SymVector", "basis_convert", "inner_product", "jack_table", "p1_power_in_jack",
    "QuiverSpec", "closed_forms_c2", "cyclic_trace", "m_bifund", "z_quiver_c2",
    "ALESpace", "Charge", "cartan_inverse", "cartan_matrix", "character_chi", "enumerate_charges",
    "blowup_oracle_k2", "edge_chern", "edge_factor", "rank_defect",
    "ALEQuiverSpec", "agt_report", "closed_forms_ale", "z_pure_ale", "z_quiver_ale",
    "FockSpace", "FockVector", "gen",
]
