"""Generators shared by the test modules."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from accessknow.kernel import Logic, LogicId, ProofBuilder, Scheme, instantiate
from accessknow.syntax import BOT, And, Bot, Box, Common, Formula, Imp, Know, Or, Var

ATOMS = (Var("x"), Var("y"))


def random_formula(rng: random.Random, logic: LogicId, depth: int = 3,
                   atoms=ATOMS) -> Formula:
    if depth <= 0 or rng.random() < 0.3:
        return rng.choice(atoms + (BOT,)) if rng.random() < 0.9 else rng.choice(atoms)
    ops = ["and", "or", "imp"]
    if logic.has_box:
        ops.append("box")
    if logic.has_knowledge:
        ops.append("know")
    if logic.has_common:
        ops.append("common")
    op = rng.choice(ops)
    sub = lambda: random_formula(rng, logic, depth - 1, atoms)
    if op == "and":
        return And(sub(), sub())
    if op == "or":
        return Or(sub(), sub())
    if op == "imp":
        return Imp(sub(), sub())
    if op == "box":
        return Box(sub())
    if op == "know":
        return Know(rng.randint(1, logic.agents), sub())
    return Common(rng.choice(logic.groups), sub())


def _params(rng: random.Random, logic: LogicId, scheme: Scheme) -> dict:
    if scheme in (Scheme.S9, Scheme.S10, Scheme.S11, Scheme.S15):
        return {"group": rng.choice(logic.groups)}
    if scheme in (Scheme.S12, Scheme.S13):
        g = rng.choice(logic.groups)
        return {"group": g, "i": rng.choice(g)}
    if scheme is Scheme.S14:
        g = rng.choice(logic.groups)
        subs = [h for h in logic.groups if set(h) <= set(g)]
        return {"group": g, "subgroup": rng.choice(subs)}
    return {"i": rng.randint(1, logic.agents)}


def random_derivation(rng: random.Random, logic: LogicId, n_steps: int = 10,
                      n_hyps: int = 1, allow_tnd: bool = True):
    """A derivation that is valid by construction, with a mix of every rule."""
    hyps = [random_formula(rng, logic, 2) for _ in range(n_hyps)]
    b = ProofBuilder(hyps)
    schemes = sorted((s for s in logic.schemes if s is not Scheme.INT
                      and (allow_tnd or s is not Scheme.TND)), key=lambda s: s.value)
    axioms: list[int] = []
    while len(b) < n_steps:
        r = rng.random()
        if r < 0.15 and hyps:
            b.hyp(rng.randrange(len(hyps)))
        elif r < 0.35:
            # K combinator on an existing step: enables a follow-up MP
            if len(b):
                a = b.formula(rng.randrange(len(b)))
                k = b.taut(Imp(a, Imp(random_formula(rng, logic, 1), a)))
                axioms.append(k)
            else:
                axioms.append(b.taut(Imp(Var("x"), Var("x"))))
        elif r < 0.55 and schemes:
            s = rng.choice(schemes)
            f = instantiate(s, random_formula(rng, logic, 2), random_formula(rng, logic, 1),
                            **_params(rng, logic, s))
            axioms.append(b.axiom(s, f))
        elif r < 0.7 and logic.logic is not Logic.IEL:
            pool = [k for k in axioms if b.steps[k].just.scheme is not Scheme.TND]
            if pool:
                b.an(rng.choice(pool))
        else:
            pairs = [(i, j) for j in range(len(b)) for i in range(len(b))
                     if isinstance(b.formula(j), Imp) and b.formula(j).left == b.formula(i)]
            if pairs:
                b.mp(*rng.choice(pairs))
            else:
                axioms.append(b.taut(Imp(Imp(Var("x"), Var("x")), Imp(Var("y"), Var("y")))))
    return b.build()


@lru_cache(maxsize=None)
def formulas_of_size(n: int, atoms: tuple[str, ...] = ("p", "q")) -> tuple[Formula, ...]:
    """Every propositional formula with exactly ``n`` nodes over the atoms and bot."""
    if n == 1:
        return tuple(Var(a) for a in atoms) + (Bot(),)
    out = []
    for k in range(1, n - 1):
        for left in formulas_of_size(k, atoms):
            for right in formulas_of_size(n - 1 - k, atoms):
                out += [And(left, right), Or(left, right), Imp(left, right)]
    return tuple(out)


def formulas_up_to(n: int, atoms: tuple[str, ...] = ("p", "q")):
    return itertools.chain.from_iterable(formulas_of_size(k, atoms) for k in range(1, n + 1))


def shift(d, off: int):
    """Steps of ``d`` with every step reference moved by ``off``."""
    from accessknow.kernel import AN, MP, Step
    out = []
    for s in d.steps:
        j = s.just
        if isinstance(j, MP):
            j = MP(j.minor + off, j.major + off)
        elif isinstance(j, AN):
            j = AN(j.premise + off)
        out.append(Step(s.formula, j))
    return out


def inject_an_over_tnd(d, where: int, phi=None):
    """Prepend a TND instance and make step ``where`` an AN over it.

    ``where`` indexes the original steps; the derivation keeps its length
    plus one, so every later reference still resolves.
    """
    from accessknow.kernel import AN, Axiom, Derivation, Scheme, Step
    from accessknow.syntax import Box, Or, Var, neg
    phi = phi or Var("x0")
    tnd = Or(phi, neg(phi))
    steps = [Step(tnd, Axiom(Scheme.TND))] + shift(d, 1)
    steps[where + 1] = Step(Box(tnd), AN(0))
    return Derivation(d.hypotheses, tuple(steps))
