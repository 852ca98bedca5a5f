"""Algebraic models: expansions, validators, evaluation, sweeps and search."""

from .expansion import ModelExpansion, all_groups, box_table, format_model, group_name, parse_model
from .fixtures import FIXTURES, fixture
from .search import Countermodel, SearchOutcome, countermodel_search
from .semantics import UnboundVariable, evaluate, evaluate_many, satisfies, valid_in
from .sweep import (SweepReport, axiom_instances, certified_theorems, check_box_collapse,
                    check_lemma815, corpus_models, soundness_sweep, theorem_truth,
                    validator_agreement)
from .validate import (DEF810_CONDITIONS, THM870_CONDITIONS, ConditionResult, ValidationReport,
                       is_model, validate_def810, validate_thm870)

__all__ = [
    "ModelExpansion", "all_groups", "box_table", "format_model", "group_name", "parse_model",
    "FIXTURES", "fixture", "Countermodel", "SearchOutcome", "countermodel_search",
    "UnboundVariable", "evaluate", "evaluate_many", "satisfies", "valid_in",
    "SweepReport", "axiom_instances", "certified_theorems", "check_box_collapse",
    "check_lemma815", "corpus_models", "soundness_sweep", "theorem_truth",
    "validator_agreement", "DEF810_CONDITIONS", "THM870_CONDITIONS", "ConditionResult",
    "ValidationReport", "is_model", "validate_def810", "validate_thm870",
]
