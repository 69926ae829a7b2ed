"""Intuitionistic epistemic logic toolkit.

Parsing and printing for the intuitionistic epistemic language (K) and the
classical bimodal language ([], V); finite Kripke models with frame
validation and forcing; brute-force countermodel search; a terminating
tableau decision procedure with countermodel extraction; a Hilbert proof
checker with a machine-checked proof library; and the translations tying
the intuitionistic systems to classical bimodal logics of verification.
"""

from .syntax import (
    And, Atom, Bottom, Box, Formula, Imp, K, Logic, Or, Ver,
    FALSE, ParseError, LanguageError,
    atoms, godel_translate, glivenko_translate, iff, kolmogorov_translate,
    neg, node_count, parse, render,
)
from .semantics import (
    KripkeModel, ModelFormatError, ValidationReport, ValuationClosureWarning,
    add_root, builtin, forces, format_model, holds_in_model, join_with_root,
    parse_model, validate,
)
from .search import SearchConfig, enumerate_models, find_countermodel, random_model
from .prover import Invalid, Unknown, Valid, Verdict, decide, decide_ipc

__all__ = [
    "And", "Atom", "Bottom", "Box", "Formula", "Imp", "K", "Logic", "Or", "Ver",
    "FALSE", "ParseError", "LanguageError",
    "atoms", "godel_translate", "glivenko_translate", "iff", "kolmogorov_translate",
    "neg", "node_count", "parse", "render",
    "KripkeModel", "ModelFormatError", "ValidationReport", "ValuationClosureWarning",
    "add_root", "builtin", "forces", "format_model", "holds_in_model", "join_with_root",
    "parse_model", "validate",
    "SearchConfig", "enumerate_models", "find_countermodel", "random_model",
    "Invalid", "Unknown", "Valid", "Verdict", "decide", "decide_ipc",
]

__version__ = "0.1.0"
