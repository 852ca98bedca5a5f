"""Logic identifiers, axiom schemes and their patterns."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property

from ..syntax import (BOT, Box, Common, Formula, Imp, Know, Language, Or, And,
                      in_language, neg, subformulas)


class Logic(enum.Enum):
    IEL = "IEL"
    L5 = "L5"
    EL5 = "EL5"
    L5ACminus = "L5ACminus"
    L5AC = "L5AC"


class Scheme(enum.Enum):
    INT = "INT"
    TND = "TND"
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    S4 = "S4"
    S5 = "S5"
    S6 = "S6"
    S7 = "S7"
    S8 = "S8"
    S9 = "S9"
    S10 = "S10"
    S11 = "S11"
    S12 = "S12"
    S13 = "S13"
    S14 = "S14"
    S15 = "S15"
    IEL_DIST = "IEL_DIST"
    IEL_COREFL = "IEL_COREFL"
    IEL_INTREFL = "IEL_INTREFL"
    EL5_INTREFL = "EL5_INTREFL"
    EL5_DIST = "EL5_DIST"
    EL5_WEAKCO = "EL5_WEAKCO"

    @property
    def intuitionistically_acceptable(self) -> bool:
        return self is not Scheme.TND

    @classmethod
    def parse(cls, name: str) -> "Scheme":
        try:
            return cls[name.strip().upper().replace("-", "_")]
        except KeyError:
            raise ValueError(f"unknown axiom scheme {name!r}") from None


_S = Scheme
_MODAL = {_S.S1, _S.S2, _S.S3, _S.S4, _S.S5}
_SCHEMES: dict[Logic, frozenset[Scheme]] = {
    Logic.IEL: frozenset({_S.INT, _S.IEL_DIST, _S.IEL_COREFL, _S.IEL_INTREFL}),
    Logic.L5: frozenset({_S.INT, _S.TND} | _MODAL),
    Logic.EL5: frozenset({_S.INT, _S.TND, _S.EL5_INTREFL, _S.EL5_DIST, _S.EL5_WEAKCO} | _MODAL),
    Logic.L5AC: frozenset({_S.INT, _S.TND} | _MODAL | {
        _S.S6, _S.S7, _S.S8, _S.S9, _S.S10, _S.S11, _S.S12, _S.S13, _S.S14, _S.S15}),
}
_SCHEMES[Logic.L5ACminus] = _SCHEMES[Logic.L5AC] - {_S.S10, _S.S15}


@dataclass(frozen=True)
class LogicId:
    """A logic together with its number of agents."""

    logic: Logic
    agents: int = 1

    def __post_init__(self):
        if self.agents < 1:
            raise ValueError("agent count must be >= 1")
        if self.logic in (Logic.IEL, Logic.EL5) and self.agents != 1:
            raise ValueError(f"{self.logic.value} is a single-agent logic")

    @classmethod
    def named(cls, name: str, agents: int | None = None) -> "LogicId":
        key = name.strip().replace("^", "").replace("_N", "")
        aliases = {"L5AC-": "L5ACminus", "L5ACMINUS": "L5ACminus"}
        key = aliases.get(key.upper(), key)
        for lg in Logic:
            if lg.value.upper() == key.upper():
                if agents is None:
                    agents = 2 if lg in (Logic.L5AC, Logic.L5ACminus) else 1
                return cls(lg, agents)
        raise ValueError(f"unknown logic {name!r}; expected one of "
                         + ", ".join(lg.value for lg in Logic))

    def __str__(self) -> str:
        if self.logic in (Logic.L5AC, Logic.L5ACminus):
            return f"{self.logic.value}[N={self.agents}]"
        return self.logic.value

    @property
    def schemes(self) -> frozenset[Scheme]:
        return _SCHEMES[self.logic]

    @property
    def has_box(self) -> bool:
        return self.logic is not Logic.IEL

    @property
    def has_knowledge(self) -> bool:
        return self.logic is not Logic.L5

    @property
    def has_common(self) -> bool:
        return self.logic in (Logic.L5AC, Logic.L5ACminus)

    @property
    def language(self) -> Language:
        return Language.FM_E if self.logic is Logic.IEL else Language.FM

    @cached_property
    def groups(self) -> tuple[tuple[int, ...], ...]:
        """Non-empty agent groups ordered by size, then lexicographically."""
        if not self.has_common:
            return ()
        agents = range(1, self.agents + 1)
        return tuple(g for r in agents for g in itertools.combinations(agents, r))

    def admits(self, f: Formula) -> bool:
        """Whether ``f`` belongs to the object language of this logic."""
        if self.logic is Logic.IEL:
            return in_language(f, Language.FM_E)
        for g in subformulas(f):
            if isinstance(g, Know) and (not self.has_knowledge or not 1 <= g.agent <= self.agents):
                return False
            if isinstance(g, Common) and (not self.has_common or g.group[-1] > self.agents):
                return False
        return True


# ------------------------------------------------------------- patterns

@dataclass(frozen=True)
class _Meta(Formula):
    name: str


@dataclass(frozen=True)
class _KnowP(Formula):
    agent: str
    child: Formula


@dataclass(frozen=True)
class _CommonP(Formula):
    group: str
    child: Formula


P, Q = _Meta("phi"), _Meta("psi")


def _K(c: Formula, i: str = "i") -> Formula:
    return _KnowP(i, c)


def _C(c: Formula, g: str = "G") -> Formula:
    return _CommonP(g, c)


PATTERNS: dict[Scheme, Formula] = {
    _S.TND: Or(P, neg(P)),
    _S.S1: Imp(Box(Or(P, Q)), Or(Box(P), Box(Q))),
    _S.S2: Imp(Box(P), P),
    _S.S3: Imp(Box(Imp(P, Q)), Imp(Box(P), Box(Q))),
    _S.S4: Imp(Box(P), Box(Box(P))),
    _S.S5: Imp(neg(Box(P)), Box(neg(Box(P)))),
    _S.S6: Imp(_K(P), P),
    _S.S7: Imp(_K(Imp(P, Q)), Imp(_K(P), _K(Q))),
    _S.S8: Imp(_K(Or(P, Q)), Or(_K(P), _K(Q))),
    _S.S9: Imp(_C(Imp(P, Q)), Imp(_C(P), _C(Q))),
    _S.S10: Imp(_C(Or(P, Q)), Or(_C(P), _C(Q))),
    _S.S11: Imp(Box(P), Box(_C(P))),
    _S.S12: Imp(_C(P), _K(P)),
    _S.S13: Imp(_C(P), _C(_K(P))),
    _S.S14: Imp(_C(P), _C(P, "H")),
    _S.S15: Imp(_C(P), _C(_C(P))),
    _S.IEL_DIST: Imp(_K(Imp(P, Q)), Imp(_K(P), _K(Q))),
    _S.IEL_COREFL: Imp(P, _K(P)),
    _S.IEL_INTREFL: Imp(_K(P), neg(neg(P))),
    _S.EL5_INTREFL: Imp(_K(P), neg(neg(P))),
    _S.EL5_DIST: Imp(_K(Imp(P, Q)), Imp(_K(P), _K(Q))),
    _S.EL5_WEAKCO: Imp(Box(P), Box(_K(P))),
}


def _match(p: Formula, f: Formula, env: dict) -> bool:
    if isinstance(p, _Meta):
        bound = env.get(p.name)
        if bound is None:
            env[p.name] = f
            return True
        return bound == f
    if isinstance(p, _KnowP):
        if not isinstance(f, Know):
            return False
        if env.setdefault(p.agent, f.agent) != f.agent:
            return False
        return _match(p.child, f.child, env)
    if isinstance(p, _CommonP):
        if not isinstance(f, Common):
            return False
        if env.setdefault(p.group, f.group) != f.group:
            return False
        return _match(p.child, f.child, env)
    if type(p) is not type(f):
        return False
    if isinstance(p, (And, Or, Imp)):
        return _match(p.left, f.left, env) and _match(p.right, f.right, env)
    if isinstance(p, Box):
        return _match(p.child, f.child, env)
    return p == f


def match_pattern(scheme: Scheme, f: Formula) -> dict | None:
    """Metavariable bindings if ``f`` has the shape of ``scheme``, else None.

    Side conditions: for S12/S13 the agent must belong to G; for S14 the
    second group must be a subset of the first.
    """
    env: dict = {}
    if not _match(PATTERNS[scheme], f, env):
        return None
    if scheme in (_S.S12, _S.S13) and env["i"] not in env["G"]:
        return None
    if scheme is _S.S14 and not set(env["H"]) <= set(env["G"]):
        return None
    return env


def instantiate(scheme: Scheme, phi: Formula, psi: Formula = BOT, *,
                i: int = 1, group: tuple[int, ...] = (1,), subgroup: tuple[int, ...] | None = None
                ) -> Formula:
    """Build the instance of a pattern scheme (not INT) for given parameters."""
    env = {"phi": phi, "psi": psi, "i": i, "G": group, "H": subgroup or group}

    def go(p: Formula) -> Formula:
        if isinstance(p, _Meta):
            return env[p.name]
        if isinstance(p, _KnowP):
            return Know(env[p.agent], go(p.child))
        if isinstance(p, _CommonP):
            return Common(env[p.group], go(p.child))
        if isinstance(p, (And, Or, Imp)):
            return type(p)(go(p.left), go(p.right))
        if isinstance(p, Box):
            return Box(go(p.child))
        return p

    if scheme is Scheme.INT:
        raise ValueError("INT has no single pattern")
    return go(PATTERNS[scheme])
