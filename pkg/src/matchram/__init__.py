"""Matchings in multicolour Ramsey problems on s-connectors: Gallai-Edmonds
tools, the compression pipeline and an exact arrowing oracle."""

from .graph import Graph, GEDecomposition, ge_decompose, matching_number, max_matching
from .coloured import ColouredGraph, SearchGuardExceeded
from .connector import TVector, is_s_connector
from .compression import DistilResult, LemmaViolation, PreconditionError, distil
from .ramsey import arrows, rho, theorem_bound, verify_main_plus

__all__ = [
    "Graph", "GEDecomposition", "ge_decompose", "matching_number", "max_matching",
    "ColouredGraph", "SearchGuardExceeded", "TVector", "is_s_connector",
    "DistilResult", "LemmaViolation", "PreconditionError", "distil",
    "arrows", "rho", "theorem_bound", "verify_main_plus",
]
