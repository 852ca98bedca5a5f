"""Common knowledge as a greatest fixpoint versus the C_G operator.

All sets are taken at the designated filter TRUE.  A model is *intended*
when, for every group, the propositions the C_G table makes true are
exactly the greatest set closed under the group's knowledge operators.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .models.expansion import ModelExpansion, group_name
from .syntax import Var, expand_everyone


@dataclass(frozen=True)
class ClosureSet:
    kind: str                       # BEL_i, COMMON_G, GCLOSURE(m), GREATEST_G
    group: tuple[int, ...]
    elements: frozenset[int]

    def render(self, M: ModelExpansion) -> str:
        names = M.algebra.names
        return "{" + ",".join(names[m] for m in sorted(self.elements)) + "}"


def _need_true(M: ModelExpansion) -> frozenset[int]:
    if M.true_filter is None:
        raise ValueError("common-knowledge analysis needs a TRUE filter")
    return M.true_filter


def bel_set(M: ModelExpansion, i: int) -> ClosureSet:
    true = _need_true(M)
    K = M.K(i)
    return ClosureSet(f"BEL_{i}", (i,),
                      frozenset(m for m in range(M.algebra.size) if int(K[m]) in true))


def common_set(M: ModelExpansion, group) -> ClosureSet:
    true = _need_true(M)
    g = tuple(sorted(set(group)))
    C = M.C(g)
    return ClosureSet(f"COMMON_{group_name(g)}", g,
                      frozenset(m for m in range(M.algebra.size) if int(C[m]) in true))


def g_closure(M: ModelExpansion, group, m: int) -> ClosureSet:
    """Everything reachable from m by the knowledge operators of the group."""
    g = tuple(sorted(set(group)))
    seen = {m}
    todo = deque([m])
    while todo:
        x = todo.popleft()
        for i in g:
            y = int(M.K(i)[x])
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return ClosureSet(f"GCLOSURE({M.algebra.names[m]})", g, frozenset(seen))


def greatest_closed(M: ModelExpansion, group) -> ClosureSet:
    """Greatest set known by all of G and closed under their K tables.

    Computed by elimination: drop elements that are not known by everyone
    or that some K_i sends outside the current set, until nothing changes.
    """
    g = tuple(sorted(set(group)))
    current = set(range(M.algebra.size))
    for i in g:
        current &= bel_set(M, i).elements
    changed = True
    while changed:
        changed = False
        for m in sorted(current):
            if any(int(M.K(i)[m]) not in current for i in g):
                current.discard(m)
                changed = True
    return ClosureSet(f"GREATEST_{group_name(g)}", g, frozenset(current))


@dataclass
class GroupVerdict:
    group: tuple[int, ...]
    common: ClosureSet
    greatest: ClosureSet
    by_sets: bool                          # COMMON_G == GREATEST_G
    by_closures: bool                      # C_G(m) in TRUE iff X_{G,m} within TRUE
    witnesses: list[int] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.by_sets == self.by_closures


@dataclass
class IntendedReport:
    verdicts: list[GroupVerdict]

    @property
    def intended(self) -> bool:
        return all(v.by_sets for v in self.verdicts)

    @property
    def consistent(self) -> bool:
        return all(v.agree for v in self.verdicts)

    def lines(self, M: ModelExpansion) -> list[str]:
        names = M.algebra.names
        out = [f"intended: {'yes' if self.intended else 'no'}"]
        for v in self.verdicts:
            head = f"G={group_name(v.group)}: {'intended' if v.by_sets else 'not intended'}"
            out.append(head)
            bels = " ".join(f"BEL_{i}={bel_set(M, i).render(M)}" for i in v.group)
            out.append(f"  {bels}")
            out.append(f"  COMMON={v.common.render(M)} GREATEST={v.greatest.render(M)}")
            if v.witnesses:
                ws = ", ".join(
                    f"m={names[m]} X={g_closure(M, v.group, m).render(M)}" for m in v.witnesses)
                out.append(f"  witnesses: {ws}")
            out.append(f"  closure test: {'agrees' if v.agree else 'DISAGREES'}")
        return out


def is_intended(M: ModelExpansion) -> IntendedReport:
    """Per-group comparison by set equality and by the pointwise closure test."""
    true = _need_true(M)
    verdicts = []
    for g in M.common:
        common = common_set(M, g)
        greatest = greatest_closed(M, g)
        witnesses = []
        for m in range(M.algebra.size):
            closed_true = g_closure(M, g, m).elements <= true
            if (m in common.elements) != closed_true:
                witnesses.append(m)
        verdicts.append(GroupVerdict(g, common, greatest, common.elements == greatest.elements,
                                     not witnesses, witnesses))
    return IntendedReport(verdicts)


def check_lemma1100(M: ModelExpansion) -> list[str]:
    """C_G(m) in TRUE must put the whole G-closure of m inside TRUE."""
    true = _need_true(M)
    out = []
    for g in M.common:
        for m in common_set(M, g).elements:
            if not g_closure(M, g, m).elements <= true:
                out.append(f"G={group_name(g)}, m={M.algebra.names[m]}")
    return out


def check_lemma1090(M: ModelExpansion) -> list[str]:
    """COMMON_G is closed under G and COMMON_G <= GREATEST_G <= every BEL_i."""
    out = []
    for g in M.common:
        common = common_set(M, g).elements
        greatest = greatest_closed(M, g).elements
        bels = frozenset(range(M.algebra.size))
        for i in g:
            bels &= bel_set(M, i).elements
        if not common <= greatest:
            out.append(f"G={group_name(g)}: COMMON not within GREATEST")
        if not greatest <= bels:
            out.append(f"G={group_name(g)}: GREATEST not within the BEL sets")
        if not all(int(M.K(i)[m]) in common for m in common for i in g):
            out.append(f"G={group_name(g)}: COMMON not closed under the group")
    return out


def everyone_echo(M: ModelExpansion, group, max_depth: int = 4) -> list[str]:
    """m in COMMON_G implies E_G^n x is TRUE at x := m, for n up to ``max_depth``."""
    from .models.semantics import evaluate
    g = tuple(sorted(set(group)))
    out = []
    x = Var("x")
    for n in range(max_depth + 1):
        phi = expand_everyone(g, n, x)
        for m in sorted(common_set(M, g).elements):
            if evaluate(M, {"x": m}, phi) not in M.true_filter:
                out.append(f"E^{n} at m={M.algebra.names[m]}")
    return out
