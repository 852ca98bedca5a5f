"""Incremental construction of derivations.

The builder does structural bookkeeping only (MP/AN shapes, index
shifting); scheme membership is left to ``check_derivation`` so that a
script which is invalid in some logic can still be built and then
rejected with a diagnostic.
"""

from __future__ import annotations

from typing import Sequence

from ..syntax import Box, Formula, Imp
from .derivation import AN, MP, Axiom, Derivation, Hyp, Step
from .logics import Scheme


class ProofBuilder:
    def __init__(self, hypotheses: Sequence[Formula] = ()):
        self.hypotheses = tuple(hypotheses)
        self.steps: list[Step] = []

    def __len__(self) -> int:
        return len(self.steps)

    def formula(self, i: int) -> Formula:
        return self.steps[i].formula

    def _add(self, f: Formula, just) -> int:
        self.steps.append(Step(f, just))
        return len(self.steps) - 1

    def axiom(self, scheme: Scheme, f: Formula) -> int:
        return self._add(f, Axiom(scheme))

    def taut(self, f: Formula) -> int:
        return self.axiom(Scheme.INT, f)

    def hyp(self, k: int) -> int:
        return self._add(self.hypotheses[k], Hyp(k))

    def mp(self, minor: int, major: int) -> int:
        maj = self.formula(major)
        if not (isinstance(maj, Imp) and maj.left == self.formula(minor)):
            raise ValueError(f"MP: step {major} is not an implication from step {minor}")
        return self._add(maj.right, MP(minor, major))

    def an(self, premise: int) -> int:
        return self._add(Box(self.formula(premise)), AN(premise))

    def infer(self, conclusion: Formula, *premises: int) -> int:
        """Conclude via the INT instance ``p1 -> ... -> pn -> conclusion``."""
        chain = conclusion
        for p in reversed(premises):
            chain = Imp(self.formula(p), chain)
        k = self.taut(chain)
        for p in premises:
            k = self.mp(p, k)
        return k

    def dist(self, boxed_imp: int) -> int:
        """From ``box(a -> c)`` obtain ``box a -> box c`` (scheme S3)."""
        inner = self.formula(boxed_imp).child
        ax = self.axiom(Scheme.S3, Imp(Box(inner), Imp(Box(inner.left), Box(inner.right))))
        return self.mp(boxed_imp, ax)

    def box_mono(self, a: Formula, c: Formula) -> int:
        """``box a -> box c`` for an IPC-valid ``a -> c``."""
        return self.dist(self.an(self.taut(Imp(a, c))))

    def box_infer(self, conclusion: Formula, *boxed: int) -> int:
        """From ``box a1 .. box an`` and IPC-valid ``a1 -> .. -> an -> c`` get ``box c``."""
        chain = conclusion
        for b in reversed(boxed):
            chain = Imp(self.formula(b).child, chain)
        k = self.an(self.taut(chain))
        for b in boxed:
            k = self.mp(b, self.dist(k))
        return k

    def include(self, d: Derivation) -> int:
        """Splice a hypothesis-free derivation; returns the index of its conclusion."""
        if any(isinstance(s.just, Hyp) for s in d.steps):
            raise ValueError("only hypothesis-free derivations can be included")
        off = len(self.steps)
        for s in d.steps:
            j = s.just
            if isinstance(j, MP):
                j = MP(j.minor + off, j.major + off)
            elif isinstance(j, AN):
                j = AN(j.premise + off)
            self.steps.append(Step(s.formula, j))
        return len(self.steps) - 1

    def build(self) -> Derivation:
        return Derivation(self.hypotheses, tuple(self.steps))
