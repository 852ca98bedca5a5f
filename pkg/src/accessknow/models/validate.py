"""The two validators: prime-filter truth conditions and pointwise inequalities.

``validate_def810`` quantifies over prime filters and ultrafilters;
``validate_thm870`` checks the equivalent inequational conditions element by
element.  They share nothing but the operator tables, so agreement between
them is a meaningful cross-check.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field

import numpy as np

from .. import _kernels
from ..heyting import HeytingAlgebra
from ..kernel.logics import Logic, LogicId
from .expansion import ModelExpansion, group_name

_L = Logic
DEF810_CONDITIONS: dict[Logic, tuple[str, ...]] = {
    _L.IEL: ("(i)", "(iii)(a)", "(iii)(c)", "(IntCo)"),
    _L.EL5: ("TRUE", "(i)", "(ii)", "(iii)(a)", "(iii)(c)"),
    _L.L5: ("TRUE", "(i)", "(ii)"),
    _L.L5ACminus: ("TRUE", "(i)", "(ii)", "(iii)(a)", "(iii)(b)", "(c)*", "(iii)(d)",
                   "(iii)(e)", "(iii)(f)"),
}
DEF810_CONDITIONS[_L.L5AC] = DEF810_CONDITIONS[_L.L5ACminus] + ("COMMON-prime", "(g)")

THM870_CONDITIONS: dict[Logic, tuple[str, ...]] = {
    _L.IEL: ("(A)", "(C)", "(I)", "(IntCo)", "f_K(top)"),
    _L.EL5: ("TRUE", "(A)", "(B)", "(C)", "(I)", "f_K(top)"),
    _L.L5: ("TRUE", "(A)", "(B)"),
    _L.L5ACminus: ("TRUE", "(A)", "(B)", "(C)", "(D)", "(E)", "(F)", "(G)", "(H)", "(I)*",
                   "K-disjunction"),
}
THM870_CONDITIONS[_L.L5AC] = THM870_CONDITIONS[_L.L5ACminus] + ("C-disjunction",
                                                                "introspection")

# kernel row id -> (report label, witness layout)
_870 = {
    "B": ("(B)", "m"), "C": ("(C)", "imm"), "D": ("(D)", "gmm"), "E": ("(E)", "gim"),
    "F": ("(F)", "gim"), "G": ("(G)", "ghm"), "H": ("(H)", "g"), "I": ("(I)", "im"),
    "Istar": ("(I)*", "im"), "Kdisj": ("K-disjunction", "imm"),
    "Cdisj": ("C-disjunction", "gmm"), "intro": ("introspection", "gm"),
    "IntCo": ("(IntCo)", "im"), "Ktop": ("f_K(top)", "i"),
}
_810 = {
    "ii": ("(ii)", "m"), "iiia": ("(iii)(a)", "iPmm"), "iiib": ("(iii)(b)", "gPmm"),
    "iiic": ("(iii)(c)", "iPUm"), "cstar": ("(c)*", "iPmm"), "iiid": ("(iii)(d)", "giPm"),
    "iiie": ("(iii)(e)", "giPm"), "iiif": ("(iii)(f)", "ghPm"),
    "cprime": ("COMMON-prime", "gPmm"), "g": ("(g)", "gPm"), "IntCo": ("(IntCo)", "iPm"),
}


@dataclass(frozen=True)
class ConditionResult:
    condition: str
    passed: bool
    witness: str = ""

    def __str__(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return f"{self.condition}: {verdict}" + (f"  [{self.witness}]" if self.witness else "")


@dataclass
class ValidationReport:
    logic: LogicId
    route: str
    results: list[ConditionResult] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(r.passed for r in self.results)

    def failed(self) -> list[str]:
        return [r.condition for r in self.results if not r.passed]

    def get(self, condition: str) -> ConditionResult:
        for r in self.results:
            if r.condition == condition:
                return r
        raise KeyError(condition)

    def lines(self) -> list[str]:
        head = f"{self.route} {self.logic}: {'valid' if self.valid else 'INVALID'}"
        return [head] + ["  " + str(r) for r in self.results]


# ------------------------------------------------------------- preparation

@dataclass
class _AlgebraArrays:
    leq: np.ndarray
    join: np.ndarray
    imp: np.ndarray
    neg: np.ndarray
    prime: np.ndarray
    ultra: np.ndarray
    sup: np.ndarray
    prime_sets: tuple[frozenset, ...]
    ultra_sets: tuple[frozenset, ...]
    top_prime: bool


_ARRAYS: "weakref.WeakKeyDictionary[HeytingAlgebra, _AlgebraArrays]" = weakref.WeakKeyDictionary()


def _arrays(H: HeytingAlgebra) -> _AlgebraArrays:
    hit = _ARRAYS.get(H)
    if hit is not None:
        return hit
    n = H.size
    primes = [f.elements for f in H.prime_filters]
    ultras = [f.elements for f in H.ultrafilters]

    def rows(sets):
        out = np.zeros((len(sets), n), dtype=np.bool_)
        for k, s in enumerate(sets):
            out[k, list(s)] = True
        return out

    prime, ultra = rows(primes), rows(ultras)
    sup = np.array([[p <= u for u in ultras] for p in primes], dtype=np.bool_).reshape(
        len(primes), len(ultras))
    arr = _AlgebraArrays(
        np.ascontiguousarray(H.leq, dtype=np.bool_), np.ascontiguousarray(H.join, dtype=np.int64),
        np.ascontiguousarray(H.imp, dtype=np.int64), np.ascontiguousarray(H.neg, dtype=np.int64),
        prime, ultra, sup, tuple(primes), tuple(ultras), frozenset({H.top}) in primes)
    _ARRAYS[H] = arr
    return arr


@dataclass
class _Tables:
    K: np.ndarray
    C: np.ndarray
    box: np.ndarray
    agents: tuple[int, ...]
    groups: tuple[tuple[int, ...], ...]
    gmem: np.ndarray
    gsub: np.ndarray


def _tables(logic: LogicId, M: ModelExpansion) -> _Tables:
    n = M.algebra.size
    if logic.logic is Logic.L5:
        agents: tuple[int, ...] = ()
    elif logic.logic in (Logic.IEL, Logic.EL5):
        agents = (1,)
    else:
        agents = tuple(range(1, logic.agents + 1))
    if agents and M.n_agents < len(agents):
        raise ValueError(f"{logic} needs knowledge tables for agents 1..{len(agents)}")
    if logic.has_common and M.n_agents != logic.agents:
        raise ValueError(f"model has {M.n_agents} agents but {logic} has {logic.agents}")
    groups = logic.groups
    for g in groups:
        if g not in M.common:
            raise ValueError(f"{logic} needs a common-knowledge table for {group_name(g)}")
    K = np.array([M.K(i) for i in agents], dtype=np.int64).reshape(len(agents), n)
    C = np.array([M.common[g] for g in groups], dtype=np.int64).reshape(len(groups), n)
    if logic.has_box:
        if M.box is None:
            raise ValueError(f"{logic} needs a box table")
        box = M.box.astype(np.int64)
    else:
        box = np.arange(n, dtype=np.int64)     # unused
    gmem = np.array([[a in g for a in agents] for g in groups], dtype=np.bool_).reshape(
        len(groups), len(agents))
    gsub = np.array([[set(h) <= set(g) for h in groups] for g in groups], dtype=np.bool_).reshape(
        len(groups), len(groups))
    return _Tables(np.ascontiguousarray(K), np.ascontiguousarray(C),
                   np.ascontiguousarray(box), agents, groups, gmem, gsub)


def _true_condition(logic: LogicId, M: ModelExpansion, arr: _AlgebraArrays) -> ConditionResult:
    if M.true_filter is None:
        return ConditionResult("TRUE", False, "no TRUE filter given")
    if M.true_filter not in arr.ultra_sets:
        return ConditionResult("TRUE", False, "TRUE is not an ultrafilter")
    return ConditionResult("TRUE", True)


def _witness(layout: str, row: np.ndarray, M: ModelExpansion, t: _Tables,
             arr: _AlgebraArrays) -> str:
    H = M.algebra
    names = H.names
    parts = []
    m_seen = 0
    for kind, v in zip(layout, row[1:]):
        v = int(v)
        if kind == "i":
            parts.append(f"i={t.agents[v]}")
        elif kind == "g":
            parts.append(f"G={group_name(t.groups[v])}")
        elif kind == "h":
            parts.append(f"G'={group_name(t.groups[v])}")
        elif kind == "P":
            s = arr.prime_sets[v]
            parts.append("F={" + ",".join(names[m] for m in sorted(s)) + "}")
        elif kind == "U":
            s = arr.ultra_sets[v]
            parts.append("U={" + ",".join(names[m] for m in sorted(s)) + "}")
        elif kind == "m":
            parts.append(("m" if m_seen == 0 else "m'") + f"={names[v]}")
            m_seen += 1
    return ", ".join(parts)


def _run(logic: LogicId, M: ModelExpansion, route: str) -> ValidationReport:
    H = M.algebra
    arr = _arrays(H)
    t = _tables(logic, M)
    report = ValidationReport(logic, route)
    if route == "def810":
        wanted = DEF810_CONDITIONS[logic.logic]
        out = _kernels.def810_kernel(arr.leq, arr.join, arr.imp, H.top, H.bot, t.box, t.K, t.C,
                                     t.gmem, t.gsub, M.true_mask, arr.prime, arr.ultra, arr.sup)
        spec, ids = _810, _kernels.DEF810
    else:
        wanted = THM870_CONDITIONS[logic.logic]
        out = _kernels.thm870_kernel(arr.leq, arr.join, arr.imp, arr.neg, H.top, H.bot, t.box,
                                     t.K, t.C, t.gmem, t.gsub)
        spec, ids = _870, _kernels.THM870
    by_label = {}
    for k, cid in enumerate(ids):
        label, layout = spec[cid]
        row = out[k]
        w = _witness(layout, row, M, t, arr) if row[0] else ""
        by_label[label] = ConditionResult(label, not bool(row[0]), w)
    for label in wanted:
        if label == "TRUE":
            report.results.append(_true_condition(logic, M, arr))
        elif label == "(i)":
            ok = arr.top_prime
            report.results.append(ConditionResult(
                "(i)", ok, "" if ok else "{" + H.names[H.top] + "} is not a prime filter"))
        elif label == "(A)":
            report.results.append(_dp_condition(H))
        else:
            report.results.append(by_label[label])
    return report


def _dp_condition(H: HeytingAlgebra) -> ConditionResult:
    t = H.top
    for a in range(H.size):
        for b in range(H.size):
            if H.join[a, b] == t and a != t and b != t:
                return ConditionResult("(A)", False,
                                       f"m={H.names[a]}, m'={H.names[b]} join to top")
    return ConditionResult("(A)", True)


def validate_def810(logic: LogicId, M: ModelExpansion) -> ValidationReport:
    """Truth conditions over all prime filters and ultrafilters."""
    return _run(logic, M, "def810")


def validate_thm870(logic: LogicId, M: ModelExpansion) -> ValidationReport:
    """Pointwise inequational conditions."""
    return _run(logic, M, "thm870")


def is_model(logic: LogicId, M: ModelExpansion) -> bool:
    return validate_thm870(logic, M).valid
