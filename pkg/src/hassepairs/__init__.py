"""Hasse pairs of prime powers, their elliptic curve sets and isogeny graphs."""

from .curves import CurveClass, CurveModel, count_points, enumerate_set, j_invariant, j_set
from .density import andrica_scan, hasse_partner_count, sieve, threshold_report
from .errors import HasseError
from .field import FieldElement, FiniteField, field_of_order, make_field
from .forms import class_number, kronecker_class_number
from .graph import IsogenyGraph, build_graph, floor_vertices, frobenius_cycles, graphs_isomorphic, to_dot
from .modpoly import ModularPolynomialStore, load_modpoly
from .pairs import PairRecord, Split, Status, classify_pair, enumerate_hasse_pairs, is_hasse
from .sweep import check_pair, pair_graphs, pair_sets, sweep

__version__ = "0.1.0"

__all__ = [
    "CurveClass",
    "CurveModel",
    "FieldElement",
    "FiniteField",
    "HasseError",
    "IsogenyGraph",
    "ModularPolynomialStore",
    "PairRecord",
    "Split",
    "Status",
    "andrica_scan",
    "build_graph",
    "check_pair",
    "class_number",
    "classify_pair",
    "count_points",
    "enumerate_hasse_pairs",
    "enumerate_set",
    "field_of_order",
    "floor_vertices",
    "frobenius_cycles",
    "graphs_isomorphic",
    "hasse_partner_count",
    "is_hasse",
    "j_invariant",
    "j_set",
    "kronecker_class_number",
    "load_modpoly",
    "make_field",
    "pair_graphs",
    "pair_sets",
    "sieve",
    "sweep",
    "threshold_report",
    "to_dot",
]
