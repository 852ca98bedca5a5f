"""Axiom schemes, derivation checking and proof transformers."""

from .builder import ProofBuilder
from .derivation import (AN, MP, Axiom, Derivation, DerivationError, Diagnostic, Hyp,
                         SchemeNotInLogic, Step, Theorem, check_derivation, diagnose,
                         match_scheme)
from .logics import Logic, LogicId, Scheme, instantiate, match_pattern
from .proof_file import ProofFileError, format_proof, parse_proof
from .scripts import SCRIPTS, ScriptReport, ScriptResult, run_regression_scripts
from .transform import apply_deduction_theorem, necessitate, substitute_derivation

__all__ = [
    "AN", "MP", "Axiom", "Hyp", "Step", "Derivation", "DerivationError", "Diagnostic",
    "SchemeNotInLogic", "Theorem", "check_derivation", "diagnose", "match_scheme",
    "Logic", "LogicId", "Scheme", "instantiate", "match_pattern", "ProofBuilder",
    "ProofFileError", "format_proof", "parse_proof", "SCRIPTS", "ScriptReport",
    "ScriptResult", "run_regression_scripts", "apply_deduction_theorem", "necessitate",
    "substitute_derivation",
]
