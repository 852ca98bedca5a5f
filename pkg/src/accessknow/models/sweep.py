"""Corpus sweeps: soundness of the axioms, theorem truth, operator lemmas."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..heyting import algebra_corpus
from ..kernel.logics import Logic, LogicId, Scheme, instantiate
from ..syntax import (And, Box, Common, Formula, Imp, Know, Or, Var, neg, render,
                      variables)
from .expansion import ModelExpansion
from .fixtures import FIXTURES
from .generate import candidate_stream, random_expansion
from .semantics import all_assignments, evaluate_many
from .validate import is_model

X, Y = Var("x"), Var("y")


def corpus_models(logic: LogicId, per_algebra: int = 6, seed: int = 0) -> list[ModelExpansion]:
    """Fixtures valid for ``logic`` plus generated valid models on every DP algebra.

    Draws are deterministic for a given seed; duplicates are dropped.
    """
    out: list[ModelExpansion] = []
    seen = set()

    def add(M: ModelExpansion) -> None:
        key = (M.algebra.label, M.true_filter, M.know.tobytes(),
               tuple(t.tobytes() for t in M.common.values()))
        if key not in seen:
            seen.add(key)
            out.append(M)

    for name, make in FIXTURES.items():
        M = make()
        try:
            if _fits(logic, M) and is_model(logic, M):
                add(M)
        except ValueError:
            pass
    rng = np.random.default_rng(seed)
    for H in algebra_corpus():
        if not H.has_disjunction_property:
            continue
        ultras = [u.elements for u in H.ultrafilters]
        for k in range(per_algebra * 4):
            if sum(1 for M in out if M.algebra is H) >= per_algebra:
                break
            tf = ultras[k % len(ultras)]
            M = random_expansion(logic, H, tf, rng, f"{H.label}.{k}")
            if is_model(logic, M):
                add(M)
    return out


def _fits(logic: LogicId, M: ModelExpansion) -> bool:
    if logic.logic is Logic.L5:
        return M.box is not None
    if logic.has_common:
        return M.n_agents == logic.agents
    if logic.logic is Logic.IEL:
        return M.n_agents >= 1
    return M.n_agents >= 1 and M.box is not None


# ------------------------------------------------------------ axiom pool

INT_POOL: tuple[Formula, ...] = (
    Imp(X, Imp(Y, X)),
    Imp(And(X, Y), X),
    Imp(X, Or(X, Y)),
    Imp(Imp(X, Imp(X, Y)), Imp(X, Y)),
    Imp(X, neg(neg(X))),
    Imp(neg(neg(neg(X))), neg(X)),
    Imp(Or(X, Y), Or(Y, X)),
    Imp(Box(X), Imp(Y, Box(X))),
    Imp(Know(1, X), Or(Know(1, X), Y)),
)


@dataclass(frozen=True)
class AxiomInstance:
    scheme: Scheme
    formula: Formula


def axiom_instances(logic: LogicId) -> list[AxiomInstance]:
    """Every scheme of ``logic`` at phi := x, psi := y, over all agents and groups."""
    agents = range(1, logic.agents + 1)
    groups = logic.groups
    out = []
    for f in INT_POOL:
        if logic.admits(f):
            out.append(AxiomInstance(Scheme.INT, f))
    for s in sorted(logic.schemes, key=lambda s: list(Scheme).index(s)):
        if s is Scheme.INT:
            continue
        params: list[dict] = [{}]
        if s in (Scheme.S6, Scheme.S7, Scheme.S8) or s.value.startswith(("IEL", "EL5")):
            params = [{"i": i} for i in agents]
        elif s in (Scheme.S9, Scheme.S10, Scheme.S11, Scheme.S15):
            params = [{"group": g} for g in groups]
        elif s in (Scheme.S12, Scheme.S13):
            params = [{"group": g, "i": i} for g in groups for i in g]
        elif s is Scheme.S14:
            params = [{"group": g, "subgroup": h} for g in groups for h in groups
                      if set(h) <= set(g)]
        for p in params:
            f = instantiate(s, X, Y, **p)
            if logic.admits(f):
                out.append(AxiomInstance(s, f))
    return out


@dataclass
class Violation:
    model: str
    what: str
    formula: str
    assignment: dict[str, str]
    value: str

    def __str__(self) -> str:
        env = ", ".join(f"{k}={v}" for k, v in self.assignment.items())
        return f"{self.model}: {self.what} {self.formula} at {env or '-'} -> {self.value}"


@dataclass
class SweepReport:
    name: str
    logic: LogicId
    models: int = 0
    checks: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        return (f"{self.name} {self.logic}: models={self.models} checks={self.checks} "
                f"violations={len(self.violations)}")


def _violation(M: ModelExpansion, what: str, f: Formula, env, k: int, vals) -> Violation:
    names = M.algebra.names
    return Violation(M.label or M.algebra.label, what, render(f),
                     {v: names[int(env[v][k])] for v in env}, names[int(vals[k])])


def certified_theorems(logic: LogicId) -> list[Formula]:
    """Conclusions of the bundled scripts that the kernel accepts under ``logic``."""
    from ..kernel.derivation import DerivationError, check_derivation
    from ..kernel.scripts import SCRIPTS
    out = []
    for s in SCRIPTS:
        if logic.logic not in s.logics:
            continue
        try:
            thm = check_derivation(logic, s.build())
        except (DerivationError, ValueError):
            continue
        if not thm.hypotheses and thm.formula not in out:
            out.append(thm.formula)
    return out


def soundness_sweep(logic: LogicId, models: list[ModelExpansion],
                    instances: list[AxiomInstance] | None = None) -> SweepReport:
    """Non-TND axioms must denote top, TND must land in TRUE, under every assignment."""
    instances = instances if instances is not None else axiom_instances(logic)
    rep = SweepReport("soundness", logic, len(models))
    for M in models:
        env = all_assignments(M, ["x", "y"])
        top = M.algebra.top
        for inst in instances:
            vals = np.atleast_1d(evaluate_many(M, inst.formula, env))
            rep.checks += len(vals)
            if inst.scheme is Scheme.TND:
                bad = ~M.true_mask[vals]
            else:
                bad = vals != top
            for k in np.flatnonzero(bad)[:1]:
                rep.violations.append(_violation(M, inst.scheme.value, inst.formula, env, k, vals))
    return rep


def theorem_truth(logic: LogicId, models: list[ModelExpansion],
                  theorems: list[Formula]) -> SweepReport:
    """Every theorem must be designated in every model under every assignment."""
    rep = SweepReport("theorem-truth", logic, len(models))
    for M in models:
        for f in theorems:
            names = sorted(variables(f))
            env = all_assignments(M, names)
            vals = np.atleast_1d(evaluate_many(M, f, env))
            rep.checks += len(vals)
            if logic.logic is Logic.IEL:
                bad = vals != M.algebra.top
            else:
                bad = ~M.true_mask[vals]
            for k in np.flatnonzero(bad)[:1]:
                rep.violations.append(_violation(M, "theorem", f, env, k, vals))
    return rep


def check_lemma815(M: ModelExpansion) -> list[str]:
    """Epistemic tables fix top and are monotone; returns failure messages."""
    H = M.algebra
    tables = [(f"K{i + 1}", t) for i, t in enumerate(M.know)]
    tables += [(f"C{{{','.join(map(str, g))}}}", t) for g, t in M.common.items()]
    out = []
    for name, t in tables:
        if t[H.top] != H.top:
            out.append(f"{name}(top) = {H.names[t[H.top]]}")
        bad = np.argwhere(H.leq & ~H.leq[t[:, None], t[None, :]])
        if len(bad):
            a, b = bad[0]
            out.append(f"{name} not monotone at {H.names[a]} <= {H.names[b]}")
    return out


_POOL_510 = (X, neg(X), Or(X, Y), Imp(X, Y), Box(X), Know(1, Y))


def check_box_collapse(M: ModelExpansion, logic: LogicId) -> list[str]:
    """box phi, box K_i phi and box C_G phi denote the same element."""
    env = all_assignments(M, ["x", "y"])
    out = []
    for phi in _POOL_510:
        if not logic.admits(phi):
            continue
        base = evaluate_many(M, Box(phi), env)
        others = [Box(Know(i, phi)) for i in range(1, M.n_agents + 1)]
        if logic.has_common:
            others += [Box(Common(g, phi)) for g in logic.groups]
        for o in others:
            if not logic.admits(o):
                continue
            if (evaluate_many(M, o, env) != base).any():
                out.append(f"{render(o)} differs from {render(Box(phi))}")
    return out


def validator_agreement(logic: LogicId, count: int, seed: int = 0):
    """(candidates, valid, disagreements) over generated candidates."""
    from .validate import validate_def810, validate_thm870
    total = valid = 0
    disagreements = []
    for M in candidate_stream(logic, count, seed):
        a = validate_def810(logic, M).valid
        b = validate_thm870(logic, M).valid
        total += 1
        valid += b
        if a != b:
            disagreements.append(M)
    return total, valid, disagreements
