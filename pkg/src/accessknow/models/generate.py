"""Candidate operator tables: exhaustive monotone enumeration and random draws.

Necessary conditions prune the table space before the validators run:
every table is monotone, fixes top, and sits between per-element bounds
(``m <= f(m)`` for IEL co-reflection, ``f(m) <= m`` or ``f(m) <= ~~m``).
Common-knowledge tables are bounded above by the knowledge of each member
and by the common knowledge of each proper subgroup.
"""

from __future__ import annotations

from typing import Callable, Iterator

import numpy as np

from ..heyting import HeytingAlgebra, algebra_corpus
from ..kernel.logics import Logic, LogicId
from .expansion import ModelExpansion, all_groups, box_table

Bound = Callable[[int], int]


def linear_extension(H: HeytingAlgebra) -> list[int]:
    below = H.leq.sum(axis=0)
    return sorted(range(H.size), key=lambda m: (int(below[m]), m))


def _candidates(H: HeytingAlgebra, lb: int, ub: int) -> np.ndarray:
    return np.flatnonzero(H.leq[lb] & H.leq[:, ub])


def _strict_preds(H: HeytingAlgebra) -> list[np.ndarray]:
    return [np.flatnonzero(H.leq[:, m] & (np.arange(H.size) != m)) for m in range(H.size)]


def knowledge_bounds(logic: Logic, H: HeytingAlgebra) -> tuple[np.ndarray, np.ndarray]:
    n = H.size
    ident = np.arange(n)
    if logic is Logic.IEL:
        return ident, H.neg[H.neg]
    if logic is Logic.EL5:
        return np.full(n, H.bot), H.neg[H.neg]
    return np.full(n, H.bot), ident


def monotone_tables(H: HeytingAlgebra, lower: np.ndarray, upper: np.ndarray,
                    limit: int | None = None) -> Iterator[np.ndarray]:
    """Every monotone f with f(top) = top and lower <= f <= upper, in a fixed order."""
    order = linear_extension(H)
    preds = _strict_preds(H)
    f = np.full(H.size, -1, dtype=np.int64)
    count = 0

    def rec(k: int) -> Iterator[np.ndarray]:
        nonlocal count
        if limit is not None and count >= limit:
            return
        if k == len(order):
            count += 1
            yield f.copy()
            return
        m = order[k]
        lb = int(lower[m])
        for p in preds[m]:
            lb = int(H.join[lb, f[p]])
        if m == H.top:
            cands = [H.top] if H.leq[lb, H.top] and upper[m] == H.top else []
        else:
            cands = _candidates(H, lb, int(upper[m]))
        for c in cands:
            f[m] = c
            yield from rec(k + 1)
        f[m] = -1

    yield from rec(0)


def random_monotone(H: HeytingAlgebra, lower: np.ndarray, upper: np.ndarray,
                    rng: np.random.Generator) -> np.ndarray:
    f = np.full(H.size, -1, dtype=np.int64)
    preds = _strict_preds(H)
    for m in linear_extension(H):
        lb = int(lower[m])
        for p in preds[m]:
            lb = int(H.join[lb, f[p]])
        cands = _candidates(H, lb, int(upper[m]))
        if m == H.top and H.top in cands:
            f[m] = H.top
        elif len(cands):
            f[m] = int(rng.choice(cands))
        else:       # bounds inconsistent; fall back to the lower bound
            f[m] = lb
    return f


def common_upper(H: HeytingAlgebra, g: tuple[int, ...], know: np.ndarray,
                 common: dict[tuple[int, ...], np.ndarray]) -> np.ndarray:
    up = np.full(H.size, H.top, dtype=np.int64)
    for i in g:
        up = H.meet[up, know[i - 1]]
    for h, t in common.items():
        if set(h) < set(g):
            up = H.meet[up, t]
    return up


def random_expansion(logic: LogicId, H: HeytingAlgebra, true_filter: frozenset[int] | None,
                     rng: np.random.Generator, label: str = "") -> ModelExpansion:
    """Draw tables satisfying the cheap necessary conditions for ``logic``."""
    lower, upper = knowledge_bounds(logic.logic, H)
    n_agents = 0 if logic.logic is Logic.L5 else logic.agents
    know = np.array([random_monotone(H, lower, upper, rng) for _ in range(n_agents)],
                    dtype=np.int64).reshape(n_agents, H.size)
    common: dict[tuple[int, ...], np.ndarray] = {}
    if logic.has_common:
        for g in all_groups(logic.agents):
            up = common_upper(H, g, know, common)
            common[g] = random_monotone(H, np.full(H.size, H.bot), up, rng)
    box = box_table(H) if logic.has_box else None
    tf = true_filter if logic.logic is not Logic.IEL else None
    return ModelExpansion(H, tf, box, know, common, label)


def mutate(M: ModelExpansion, rng: np.random.Generator) -> ModelExpansion:
    """Change one entry of one operator table (box included)."""
    n = M.algebra.size
    slots = []
    if M.box is not None:
        slots.append(("box", None))
    slots += [("K", i) for i in range(M.n_agents)]
    slots += [("C", g) for g in M.common]
    kind, key = slots[int(rng.integers(len(slots)))]
    m, v = int(rng.integers(n)), int(rng.integers(n))
    if kind == "box":
        box = M.box.copy()
        box[m] = v
        return M.with_tables(box=box, label=M.label + "~box")
    if kind == "K":
        know = M.know.copy()
        know[key, m] = v
        return M.with_tables(know=know, label=M.label + f"~K{key + 1}")
    common = {g: t.copy() for g, t in M.common.items()}
    common[key][m] = v
    return M.with_tables(common=common, label=M.label + "~C")


def uniform_expansion(logic: LogicId, H: HeytingAlgebra, true_filter, rng) -> ModelExpansion:
    """Tables drawn uniformly with no pruning at all."""
    n = H.size
    n_agents = 0 if logic.logic is Logic.L5 else logic.agents
    know = rng.integers(0, n, size=(n_agents, n))
    common = {g: rng.integers(0, n, size=n) for g in all_groups(logic.agents)} \
        if logic.has_common else {}
    box = box_table(H) if logic.has_box else None
    tf = true_filter if logic.logic is not Logic.IEL else None
    return ModelExpansion(H, tf, box, know, common, "uniform")


def candidate_stream(logic: LogicId, count: int, seed: int = 0,
                     algebras: list[HeytingAlgebra] | None = None) -> Iterator[ModelExpansion]:
    """``count`` candidates over the corpus: pruned draws, mutations, uniform draws.

    Algebras without the Disjunction Property and non-ultrafilter TRUE sets
    are included on purpose: the validators must agree on rejecting them.
    """
    rng = np.random.default_rng(seed)
    algebras = algebras if algebras is not None else algebra_corpus()
    for k in range(count):
        H = algebras[k % len(algebras)]
        primes = [f.elements for f in H.prime_filters]
        ultras = [f.elements for f in H.ultrafilters]
        r = rng.random()
        pool = ultras if (r < 0.9 or not primes) else primes
        tf = pool[int(rng.integers(len(pool)))] if pool else frozenset({H.top})
        kind = k % 10
        if kind < 5:
            M = random_expansion(logic, H, tf, rng, f"{H.label}#{k}")
        elif kind < 8:
            M = mutate(random_expansion(logic, H, tf, rng), rng)
        else:
            M = uniform_expansion(logic, H, tf, rng)
            if kind == 9 and M.know.size:
                # uniform but monotone-looking: f(top) = top keeps (H)/f_K(top) in play
                M.know[:, H.top] = H.top
        yield M
