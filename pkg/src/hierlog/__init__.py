"""Hybrid modal logic over hierarchical (n-layered) transition systems."""

from .equiv import (
    RelationFamily,
    check_bisimulation,
    check_simulation,
    h_simulates,
    l_simulates,
    largest_bisimulation,
    largest_simulation,
    refines,
)
from .errors import HierlogError
from .fol import eval_fol, standard_translation, translate_model, translate_signature
from .formula import classify, parse, render
from .io import load_model, model_from_dict, model_to_dict
from .model import (
    LayeredModel,
    is_hierarchical,
    restrict_model,
    restrict_predicate,
    restrict_relation,
    validate_model,
)
from .semantics import satisfies, satisfying_points, valid_in_model
from .signature import Signature, new_signature, restrict_signature, symbol_level
from .smtlib import export_smtlib

__all__ = [
    "HierlogError",
    "LayeredModel",
    "RelationFamily",
    "Signature",
    "check_bisimulation",
    "check_simulation",
    "classify",
    "eval_fol",
    "export_smtlib",
    "h_simulates",
    "is_hierarchical",
    "l_simulates",
    "largest_bisimulation",
    "largest_simulation",
    "load_model",
    "model_from_dict",
    "model_to_dict",
    "new_signature",
    "parse",
    "refines",
    "render",
    "restrict_model",
    "restrict_predicate",
    "restrict_relation",
    "restrict_signature",
    "satisfies",
    "satisfying_points",
    "standard_translation",
    "symbol_level",
    "translate_model",
    "translate_signature",
    "valid_in_model",
]
