"""Hilbert-style derivations and the checker.

A derivation is a finite sequence of steps; each step is an axiom
instance, a hypothesis, a modus ponens over two earlier steps, or an
axiom necessitation (AN) over an earlier axiom step.  AN is read strictly:
its premise must itself be an AXIOM step, and never a TND one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from ..ipc import is_int_instance
from ..syntax import Box, Formula, Imp, render
from .logics import Logic, LogicId, Scheme, match_pattern


class SchemeNotInLogic(ValueError):
    pass


def match_scheme(logic: LogicId, scheme: Scheme, f: Formula) -> bool:
    """Whether ``f`` is an instance of ``scheme`` within ``logic``."""
    if scheme not in logic.schemes:
        raise SchemeNotInLogic(f"scheme {scheme.value} is not an axiom of {logic}")
    if not logic.admits(f):
        return False
    if scheme is Scheme.INT:
        return is_int_instance(f)
    return match_pattern(scheme, f) is not None


@dataclass(frozen=True)
class Axiom:
    scheme: Scheme

    def __str__(self) -> str:
        return f"AXIOM {self.scheme.value}"


@dataclass(frozen=True)
class Hyp:
    index: int

    def __str__(self) -> str:
        return f"HYP {self.index}"


@dataclass(frozen=True)
class MP:
    """Modus ponens: from step ``minor`` (a) and step ``major`` (a -> b) infer b."""

    minor: int
    major: int

    def __str__(self) -> str:
        return f"MP {self.minor} {self.major}"


@dataclass(frozen=True)
class AN:
    premise: int

    def __str__(self) -> str:
        return f"AN {self.premise}"


Justification = Union[Axiom, Hyp, MP, AN]


@dataclass(frozen=True)
class Step:
    formula: Formula
    just: Justification


@dataclass(frozen=True)
class Derivation:
    hypotheses: tuple[Formula, ...]
    steps: tuple[Step, ...]

    def __post_init__(self):
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def conclusion(self) -> Formula:
        return self.steps[-1].formula

    def __len__(self) -> int:
        return len(self.steps)

    def uses(self, scheme: Scheme) -> bool:
        return any(isinstance(s.just, Axiom) and s.just.scheme is scheme for s in self.steps)


@dataclass(frozen=True)
class Theorem:
    """Certificate that ``hypotheses |-_logic formula`` was checked."""

    logic: LogicId
    hypotheses: tuple[Formula, ...]
    formula: Formula

    def __str__(self) -> str:
        hyps = ", ".join(render(h) for h in self.hypotheses)
        return f"{hyps + ' ' if hyps else ''}|-_{self.logic} {render(self.formula)}"


@dataclass(frozen=True)
class Diagnostic:
    step: int
    message: str

    def __str__(self) -> str:
        return f"step {self.step}: {self.message}"


class DerivationError(ValueError):
    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(map(str, self.diagnostics)))


def _check_step(logic: LogicId, d: Derivation, k: int) -> str | None:
    step = d.steps[k]
    f, j = step.formula, step.just
    if not logic.admits(f):
        return f"formula outside the language of {logic}"

    def earlier(i: int) -> str | None:
        if not 0 <= i < k:
            return f"forward reference to step {i}"
        return None

    if isinstance(j, Axiom):
        if j.scheme not in logic.schemes:
            return f"scheme {j.scheme.value} is not an axiom of {logic}"
        if not match_scheme(logic, j.scheme, f):
            return f"formula does not match scheme {j.scheme.value}"
        return None
    if isinstance(j, Hyp):
        if not 0 <= j.index < len(d.hypotheses):
            return f"hypothesis index {j.index} out of range"
        if d.hypotheses[j.index] != f:
            return f"formula differs from hypothesis {j.index}"
        return None
    if isinstance(j, MP):
        for i in (j.minor, j.major):
            if (err := earlier(i)) is not None:
                return err
        if d.steps[j.major].formula != Imp(d.steps[j.minor].formula, f):
            return (f"MP shape mismatch: step {j.major} is not "
                    f"(step {j.minor}) -> ({render(f)})")
        return None
    if isinstance(j, AN):
        if logic.logic is Logic.IEL:
            return "AN is not a rule of IEL"
        if (err := earlier(j.premise)) is not None:
            return err
        prem = d.steps[j.premise]
        if not isinstance(prem.just, Axiom):
            return f"AN applied to non-axiom step {j.premise}"
        if not prem.just.scheme.intuitionistically_acceptable:
            return "AN applied to TND"
        if f != Box(prem.formula):
            return f"AN shape mismatch: expected box of step {j.premise}"
        return None
    return f"unknown justification {j!r}"


def diagnose(logic: LogicId, d: Derivation) -> list[Diagnostic]:
    """Every problem in ``d``, in step order; empty for a valid derivation."""
    if not d.steps:
        return [Diagnostic(0, "derivation has no steps")]
    out = []
    for h_idx, h in enumerate(d.hypotheses):
        if not logic.admits(h):
            out.append(Diagnostic(-1, f"hypothesis {h_idx} outside the language of {logic}"))
    for k in range(len(d.steps)):
        msg = _check_step(logic, d, k)
        if msg is not None:
            out.append(Diagnostic(k, msg))
    return out


def check_derivation(logic: LogicId, d: Derivation) -> Theorem:
    """Validate ``d`` and return the certificate for its last formula."""
    problems = diagnose(logic, d)
    if problems:
        raise DerivationError(problems)
    return Theorem(logic, d.hypotheses, d.conclusion)
