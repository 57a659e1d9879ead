"""Exact Holant machinery on plane cubic graphs.

Public surface: plane multigraphs as rotation systems, planar 3-way edge
matchings, signature grids with exact evaluation, gadget algebra over
rationals and quadratic extensions, dichotomy classification, the five
polynomial-time solvers, and the reduction demonstrations.
"""

from .plane_graph import PlaneGraph, build, from_json
from .signatures import SymSignature, StraddledMatrix
from .holant_core import SignatureGrid, eval_grid, eval_gadget, eval_collapsed
from .p3em import find_p3em, verify, materialize, solve_sigma, ExceptionalGraph
from .classifier import classify, classify_binary, extract_params

__all__ = [
    "PlaneGraph", "build", "from_json", "SymSignature", "StraddledMatrix",
    "SignatureGrid", "eval_grid", "eval_gadget", "eval_collapsed",
    "find_p3em", "verify", "materialize", "solve_sigma", "ExceptionalGraph",
    "classify", "classify_binary", "extract_params",
]
