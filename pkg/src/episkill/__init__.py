"""Model checking for epistemic logic with skill-based knowledge updates."""

from .checker import Evaluator, common_oracle, holds, truth_set
from .model import (
    Add,
    Assign,
    ConflictError,
    Copy,
    FormatError,
    Model,
    ModelError,
    Remove,
    UnknownWorldError,
    apply_update,
    demo_model,
    fresh_skill,
    load_model,
    make_model,
    relevant_skills,
    save_model,
)
from .parse import EmptySetError, FormulaSyntaxError, parse_formula, render_formula
from .syntax import agents_of, formula_length, fragment_of, groups_of, skills_of

__all__ = [
    "Add", "Assign", "ConflictError", "Copy", "EmptySetError", "Evaluator", "FormatError",
    "FormulaSyntaxError", "Model", "ModelError", "Remove", "UnknownWorldError", "agents_of",
    "apply_update", "common_oracle", "demo_model", "formula_length", "fragment_of",
    "fresh_skill", "groups_of", "holds", "load_model", "make_model", "parse_formula",
    "relevant_skills", "render_formula", "save_model", "skills_of", "truth_set",
]
