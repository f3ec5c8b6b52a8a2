"""Hyperproperty checking over finite sets of finite and lasso traces."""

from .errors import HypertraceError
from .traces import Trace, TraceSet, Valuation, ValuationSetWord, bits_trace
from .syntax import HyperLtlFormula, PropertySelector, parse_formula, print_formula
from .ltl import ltl_eval
from .hyperltl import TraceAssignment, eval_with_assignment, flatten, hyperltl_eval
from .independence import point_independent, segment_independent, two_state
from .equivalence import kc_equivalent, k_point_equivalent

__version__ = "0.1.0"

__all__ = [
    "HypertraceError",
    "Trace",
    "TraceSet",
    "Valuation",
    "ValuationSetWord",
    "bits_trace",
    "HyperLtlFormula",
    "PropertySelector",
    "parse_formula",
    "print_formula",
    "ltl_eval",
    "TraceAssignment",
    "eval_with_assignment",
    "flatten",
    "hyperltl_eval",
    "point_independent",
    "segment_independent",
    "two_state",
    "kc_equivalent",
    "k_point_equivalent",
]
