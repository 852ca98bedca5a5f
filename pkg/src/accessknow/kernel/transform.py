"""Proof transformers: deduction theorem, necessitation, substitution."""

from __future__ import annotations

from typing import Mapping

from ..syntax import Box, Formula, Imp, substitute_many
from .builder import ProofBuilder
from .derivation import AN, MP, Axiom, Derivation, Hyp, Step, check_derivation
from .logics import LogicId, Scheme


def apply_deduction_theorem(logic: LogicId, d: Derivation) -> Derivation:
    """Discharge the last hypothesis ``h``: a derivation of ``h -> conclusion``.

    AN premises are axioms, hence hypothesis-free, so AN steps are replayed
    unchanged and then weakened like any other hypothesis-free step.
    """
    check_derivation(logic, d)
    if not d.hypotheses:
        raise ValueError("derivation has no hypothesis to discharge")
    h = d.hypotheses[-1]
    last = len(d.hypotheses) - 1
    b = ProofBuilder(d.hypotheses[:-1])
    under_h: dict[int, int] = {}    # old step -> new step proving h -> formula
    plain: dict[int, int] = {}      # old axiom step -> new step proving it outright

    def weaken(k: int) -> int:
        f = b.formula(k)
        return b.mp(k, b.taut(Imp(f, Imp(h, f))))

    for k, step in enumerate(d.steps):
        f, j = step.formula, step.just
        if isinstance(j, Hyp) and j.index == last:
            under_h[k] = b.taut(Imp(h, h))
        elif isinstance(j, Hyp):
            under_h[k] = weaken(b.hyp(j.index))
        elif isinstance(j, Axiom):
            plain[k] = b.axiom(j.scheme, f)
            under_h[k] = weaken(plain[k])
        elif isinstance(j, AN):
            under_h[k] = weaken(b.an(plain[j.premise]))
        elif isinstance(j, MP):
            a = d.steps[j.minor].formula
            s = b.taut(Imp(Imp(h, Imp(a, f)), Imp(Imp(h, a), Imp(h, f))))
            s = b.mp(under_h[j.major], s)
            under_h[k] = b.mp(under_h[j.minor], s)
    _finish(b, under_h[len(d.steps) - 1])
    return b.build()


def _finish(b: ProofBuilder, final: int) -> None:
    # make step `final` the conclusion by repeating it via f -> f
    if final != len(b.steps) - 1:
        f = b.formula(final)
        b.mp(final, b.taut(Imp(f, f)))


def necessitate(logic: LogicId, d: Derivation) -> Derivation:
    """From a TND-free, hypothesis-free derivation of phi build one of box phi."""
    check_derivation(logic, d)
    if d.hypotheses:
        raise ValueError("necessitation needs a hypothesis-free derivation")
    if d.uses(Scheme.TND):
        raise ValueError("necessitation needs a derivation without TND")
    if not logic.has_box:
        raise ValueError(f"{logic} has no box operator")
    b = ProofBuilder()
    boxed: dict[int, int] = {}
    for k, step in enumerate(d.steps):
        f, j = step.formula, step.just
        if isinstance(j, Axiom):
            boxed[k] = b.an(b.axiom(j.scheme, f))
        elif isinstance(j, AN):
            inner = d.steps[j.premise].formula
            s4 = b.axiom(Scheme.S4, Imp(Box(inner), Box(Box(inner))))
            boxed[k] = b.mp(boxed[j.premise], s4)
        elif isinstance(j, MP):
            a = d.steps[j.minor].formula
            s3 = b.axiom(Scheme.S3, Imp(Box(Imp(a, f)), Imp(Box(a), Box(f))))
            boxed[k] = b.mp(boxed[j.minor], b.mp(boxed[j.major], s3))
    _finish(b, boxed[len(d.steps) - 1])
    return b.build()


def substitute_derivation(d: Derivation, mapping: Mapping[str, Formula]) -> Derivation:
    """Apply a variable substitution to every formula of ``d``.

    Every scheme (including INT and TND) is closed under substitution, so
    the result is again a valid derivation.
    """
    return Derivation(
        tuple(substitute_many(h, mapping) for h in d.hypotheses),
        tuple(Step(substitute_many(s.formula, mapping), s.just) for s in d.steps),
    )
