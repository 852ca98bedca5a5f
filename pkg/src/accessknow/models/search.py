"""Bounded countermodel search.

Candidates are tried in a fixed order: the hand-built fixtures, then every
algebra of the corpus with the Disjunction Property by size, each with
every ultrafilter as TRUE and every admissible operator table.  Operators
that do not occur in the formula get the two-valued box table, which always
satisfies the epistemic conditions once the others do.  Finding nothing
within the bounds says nothing about theoremhood.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ..heyting import HeytingAlgebra, algebra_corpus
from ..kernel.logics import Logic, LogicId
from ..syntax import Common, Formula, Know, subformulas
from .expansion import ModelExpansion, all_groups, box_table
from .fixtures import FIXTURES
from .generate import common_upper, knowledge_bounds, monotone_tables
from .semantics import valid_in
from .sweep import _fits
from .validate import is_model


@dataclass
class Countermodel:
    model: ModelExpansion
    assignment: dict[str, int]
    value: int
    searched: int

    def describe(self) -> str:
        names = self.model.algebra.names
        env = ", ".join(f"{k}={names[v]}" for k, v in self.assignment.items())
        return f"model {self.model.label}; assignment {env or '-'}; value {names[self.value]}"


@dataclass
class SearchOutcome:
    found: Countermodel | None
    candidates: int
    models: int
    exhausted: bool


def _used(f: Formula) -> tuple[set[int], set[tuple[int, ...]]]:
    agents, groups = set(), set()
    for g in subformulas(f):
        if isinstance(g, Know):
            agents.add(g.agent)
        elif isinstance(g, Common):
            groups.add(g.group)
    return agents, groups


def _expansions(logic: LogicId, H: HeytingAlgebra, f: Formula,
                per_table_limit: int) -> Iterator[ModelExpansion]:
    used_agents, used_groups = _used(f)
    lower, upper = knowledge_bounds(logic.logic, H)
    flat = box_table(H)
    n_agents = 0 if logic.logic is Logic.L5 else logic.agents
    trues = [u.elements for u in H.ultrafilters] if logic.logic is not Logic.IEL else [None]
    box = flat if logic.has_box else None
    k_choices = []
    for i in range(1, n_agents + 1):
        if i in used_agents or (logic.has_common and used_groups):
            k_choices.append(list(monotone_tables(H, lower, upper, per_table_limit)))
        else:
            k_choices.append([flat])
    groups = all_groups(logic.agents) if logic.has_common else ()
    for tf in trues:
        for ks in itertools.product(*k_choices):
            know = np.array(ks, dtype=np.int64).reshape(n_agents, H.size)
            if not used_groups:
                common = {g: flat for g in groups}
                yield ModelExpansion(H, tf, box, know, common, H.label)
                continue
            yield from _with_common(H, tf, box, know, groups, per_table_limit)


def _with_common(H, tf, box, know, groups, limit) -> Iterator[ModelExpansion]:
    def rec(k: int, common: dict) -> Iterator[ModelExpansion]:
        if k == len(groups):
            yield ModelExpansion(H, tf, box, know, dict(common), H.label)
            return
        g = groups[k]
        up = common_upper(H, g, know, common)
        for t in monotone_tables(H, np.full(H.size, H.bot), up, limit):
            common[g] = t
            yield from rec(k + 1, common)
        common.pop(g, None)

    yield from rec(0, {})


def countermodel_search(logic: LogicId, f: Formula, max_size: int = 6,
                        max_candidates: int = 500_000,
                        per_table_limit: int = 5_000) -> SearchOutcome:
    if not logic.admits(f):
        raise ValueError(f"formula outside the language of {logic}")
    candidates = models = 0
    for name, make in FIXTURES.items():
        M = make()
        if M.algebra.size > max_size or not _fits(logic, M):
            continue
        candidates += 1
        try:
            if not is_model(logic, M):
                continue
        except ValueError:
            continue
        models += 1
        g = valid_in(logic, M, f)
        if g is not None:
            return SearchOutcome(_witness(logic, M, f, g, candidates), candidates, models, False)
    algebras = sorted((H for H in algebra_corpus()
                       if H.size <= max_size and H.has_disjunction_property),
                      key=lambda H: H.size)
    for H in algebras:
        for M in _expansions(logic, H, f, per_table_limit):
            candidates += 1
            if candidates > max_candidates:
                return SearchOutcome(None, candidates - 1, models, False)
            if not is_model(logic, M):
                continue
            models += 1
            g = valid_in(logic, M, f)
            if g is not None:
                return SearchOutcome(_witness(logic, M, f, g, candidates), candidates, models,
                                     False)
    return SearchOutcome(None, candidates, models, True)


def _witness(logic, M, f, g, searched) -> Countermodel:
    from .semantics import evaluate
    return Countermodel(M, g, evaluate(M, g, f), searched)
