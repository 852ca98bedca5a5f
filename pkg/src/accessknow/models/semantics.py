"""Evaluation of formulas in model expansions, and satisfaction."""

from __future__ import annotations

import itertools
from typing import Mapping

import numpy as np

from ..kernel.logics import Logic, LogicId
from ..syntax import And, Bot, Box, Common, Formula, Imp, Know, Or, Var, variables
from .expansion import ModelExpansion


class UnboundVariable(KeyError):
    pass


def evaluate_many(M: ModelExpansion, f: Formula, env: Mapping[str, np.ndarray]) -> np.ndarray:
    """Value of ``f`` for a batch of assignments (each env entry is an index array)."""
    H = M.algebra
    shape = np.broadcast(*env.values()).shape if env else ()
    memo: dict[Formula, np.ndarray] = {}

    def go(g: Formula) -> np.ndarray:
        hit = memo.get(g)
        if hit is not None:
            return hit
        if isinstance(g, Var):
            if g.name not in env:
                raise UnboundVariable(g.name)
            out = np.broadcast_to(np.asarray(env[g.name], dtype=np.int64), shape)
        elif isinstance(g, Bot):
            out = np.full(shape, H.bot, dtype=np.int64)
        elif isinstance(g, And):
            out = H.meet[go(g.left), go(g.right)]
        elif isinstance(g, Or):
            out = H.join[go(g.left), go(g.right)]
        elif isinstance(g, Imp):
            out = H.imp[go(g.left), go(g.right)]
        elif isinstance(g, Box):
            if M.box is None:
                raise ValueError("model has no box table")
            out = M.box[go(g.child)]
        elif isinstance(g, Know):
            out = M.K(g.agent)[go(g.child)]
        elif isinstance(g, Common):
            out = M.C(g.group)[go(g.child)]
        else:
            raise TypeError(f"cannot evaluate {g!r}")
        memo[g] = out
        return out

    return go(f)


def evaluate(M: ModelExpansion, g: Mapping[str, int], f: Formula) -> int:
    """Element denoted by ``f`` under assignment ``g``."""
    env = {k: np.asarray(M.algebra.index(v), dtype=np.int64) for k, v in g.items()}
    return int(evaluate_many(M, f, env))


def all_assignments(M: ModelExpansion, names: list[str]) -> dict[str, np.ndarray]:
    """Every assignment of elements to ``names``, as flat index arrays."""
    n = M.algebra.size
    if not names:
        return {}
    grid = np.array(list(itertools.product(range(n), repeat=len(names))), dtype=np.int64)
    return {v: grid[:, k] for k, v in enumerate(names)}


def _designated(logic: LogicId, M: ModelExpansion, values: np.ndarray) -> np.ndarray:
    if logic.logic is Logic.IEL:
        return values == M.algebra.top
    if M.true_filter is None:
        raise ValueError(f"{logic} satisfaction needs a TRUE filter")
    return M.true_mask[values]


def satisfies(logic: LogicId, M: ModelExpansion, g: Mapping[str, int], f: Formula) -> bool:
    if not logic.admits(f):
        raise ValueError(f"formula outside the language of {logic}")
    return bool(_designated(logic, M, np.asarray(evaluate(M, g, f))))


def valid_in(logic: LogicId, M: ModelExpansion, f: Formula) -> dict[str, int] | None:
    """None if every assignment satisfies ``f``; otherwise the first failing one."""
    names = sorted(variables(f))
    env = all_assignments(M, names)
    vals = evaluate_many(M, f, env)
    ok = _designated(logic, M, np.atleast_1d(vals))
    bad = np.flatnonzero(~ok)
    if not len(bad):
        return None
    k = int(bad[0])
    return {v: int(env[v][k]) for v in names}
