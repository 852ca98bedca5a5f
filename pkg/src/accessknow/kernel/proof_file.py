"""Text format for derivations.

    logic L5AC agents 2
    hyp box x
    0: box x -> x ; AXIOM S2
    1: box x ; HYP 0
    2: x ; MP 1 0

Steps are numbered from 0 and must be consecutive; ``#`` starts a comment.
"""

from __future__ import annotations

import re

from ..syntax import parse, render
from .derivation import AN, MP, Axiom, Derivation, Hyp, Step
from .logics import LogicId, Scheme


class ProofFileError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


_STEP_RE = re.compile(r"^(\d+)\s*:\s*(.+?)\s*;\s*(AXIOM|HYP|MP|AN)\b\s*(.*)$", re.IGNORECASE)


def _justification(kind: str, args: list[str], lineno: int):
    kind = kind.upper()
    try:
        if kind == "AXIOM" and len(args) == 1:
            return Axiom(Scheme.parse(args[0]))
        if kind == "HYP" and len(args) == 1:
            return Hyp(int(args[0]))
        if kind == "MP" and len(args) == 2:
            return MP(int(args[0]), int(args[1]))
        if kind == "AN" and len(args) == 1:
            return AN(int(args[0]))
    except ValueError as exc:
        raise ProofFileError(lineno, str(exc)) from None
    raise ProofFileError(lineno, f"bad arguments for {kind}: {' '.join(args) or '(none)'}")


def parse_proof(text: str) -> tuple[LogicId, Derivation]:
    logic: LogicId | None = None
    hyps, steps = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if logic is None:
            m = re.fullmatch(r"logic\s+(\S+)(?:\s+agents\s+(\d+))?", line, re.IGNORECASE)
            if not m:
                raise ProofFileError(lineno, "expected header 'logic <id> [agents <n>]'")
            try:
                logic = LogicId.named(m.group(1), int(m.group(2)) if m.group(2) else None)
            except ValueError as exc:
                raise ProofFileError(lineno, str(exc)) from None
            continue
        try:
            if line.lower().startswith("hyp ") and not steps:
                hyps.append(parse(line[4:], logic.agents))
                continue
            m = _STEP_RE.match(line)
            if not m:
                raise ProofFileError(lineno, "expected '<n>: <formula> ; <justification>'")
            if int(m.group(1)) != len(steps):
                raise ProofFileError(lineno, f"expected step number {len(steps)}")
            f = parse(m.group(2), logic.agents)
        except ValueError as exc:
            if isinstance(exc, ProofFileError):
                raise
            raise ProofFileError(lineno, str(exc)) from None
        steps.append(Step(f, _justification(m.group(3), m.group(4).split(), lineno)))
    if logic is None:
        raise ProofFileError(1, "empty proof file")
    return logic, Derivation(tuple(hyps), tuple(steps))


def format_proof(logic: LogicId, d: Derivation) -> str:
    lines = [f"logic {logic.logic.value} agents {logic.agents}"]
    lines += [f"hyp {render(h)}" for h in d.hypotheses]
    lines += [f"{k}: {render(s.formula)} ; {s.just}" for k, s in enumerate(d.steps)]
    return "\n".join(lines) + "\n"
