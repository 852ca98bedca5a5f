"""Object language: formula trees, parser, printer, substitution.

Abbreviations are desugared while parsing, so two formulas are the same
exactly when their core trees are equal:

    true    := false -> false
    ~a      := a -> false
    a <-> b := (a -> b) & (b -> a)
    a == b  := box (a <-> b)
    dia a   := ~ box ~ a

Precedence, tightest first: unary (``~ box dia K<i> C{..}``), ``&``, ``|``,
``->`` (right associative), ``<->``, ``==``.  ``&`` and ``|`` associate to
the left; ``<->`` and ``==`` do not chain.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Formula", "Var", "Bot", "And", "Or", "Imp", "Box", "Know", "Common",
    "Language", "FormulaSyntaxError", "BOT", "TOP",
    "neg", "iff", "ident", "dia", "conj",
    "make_group", "parse", "render", "substitute", "substitute_many",
    "abstract_propositional", "expand_everyone", "variables", "size",
    "subformulas", "is_propositional", "in_language", "agents_of",
]


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Var(Formula):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Bot(Formula):
    def __str__(self) -> str:
        return "false"


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Box(Formula):
    child: Formula


@dataclass(frozen=True, slots=True)
class Know(Formula):
    agent: int
    child: Formula


@dataclass(frozen=True, slots=True)
class Common(Formula):
    group: tuple[int, ...]
    child: Formula


BOT = Bot()
TOP = Imp(BOT, BOT)


def neg(a: Formula) -> Formula:
    return Imp(a, BOT)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def ident(a: Formula, b: Formula) -> Formula:
    """Propositional identity ``a == b``, i.e. ``box (a <-> b)``."""
    return Box(iff(a, b))


def dia(a: Formula) -> Formula:
    return neg(Box(neg(a)))


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-associated conjunction of a non-empty sequence."""
    it = iter(parts)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("conj() of an empty sequence") from None
    for p in it:
        acc = And(acc, p)
    return acc


class Language(enum.Enum):
    FM_E = "Fm_e"   # Var, Bot, And, Or, Imp, single-agent K
    FM = "Fm"


def make_group(members: Iterable[int], n_agents: int | None = None) -> tuple[int, ...]:
    group = tuple(sorted(set(int(m) for m in members)))
    if not group:
        raise ValueError("groups must be non-empty")
    if group[0] < 1 or (n_agents is not None and group[-1] > n_agents):
        raise ValueError(f"group {set(group)} not within agents 1..{n_agents}")
    return group


# ---------------------------------------------------------------- parsing

class FormulaSyntaxError(ValueError):
    """Raised with a 1-based column pointing at the offending token."""

    def __init__(self, message: str, column: int, text: str = ""):
        super().__init__(f"syntax error at column {column}: {message}")
        self.column = column
        self.text = text


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<eqv>==)
  | (?P<iff><->)
  | (?P<imp>->)
  | (?P<and>&)
  | (?P<or>\|)
  | (?P<not>~)
  | (?P<lp>\()
  | (?P<rp>\))
  | (?P<know>K(?P<agent>[0-9]+))
  | (?P<common>C\{(?P<members>[^}]*)\})
  | (?P<ident>[a-z][a-zA-Z0-9_]*)
    """,
    re.VERBOSE,
)

_KEYWORDS = {"true", "false", "box", "dia"}


@dataclass(frozen=True, slots=True)
class _Tok:
    kind: str
    value: object
    col: int


def _tokenize(text: str, n_agents: int) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos + 1, text)
        kind = m.lastgroup
        col = pos + 1
        pos = m.end()
        if kind == "ws":
            continue
        if kind == "agent" or kind == "know":
            agent = int(m.group("agent"))
            if not 1 <= agent <= n_agents:
                raise FormulaSyntaxError(
                    f"agent index {agent} out of range 1..{n_agents}", col, text)
            toks.append(_Tok("know", agent, col))
        elif kind == "members" or kind == "common":
            raw = [s.strip() for s in m.group("members").split(",")]
            raw = [s for s in raw if s]
            if not raw:
                raise FormulaSyntaxError("empty group", col, text)
            try:
                members = [int(s) for s in raw]
            except ValueError:
                raise FormulaSyntaxError("group members must be agent numbers", col, text) from None
            for a in members:
                if not 1 <= a <= n_agents:
                    raise FormulaSyntaxError(
                        f"agent index {a} out of range 1..{n_agents}", col, text)
            toks.append(_Tok("common", make_group(members), col))
        elif kind == "ident":
            word = m.group("ident")
            toks.append(_Tok(word if word in _KEYWORDS else "ident", word, col))
        else:
            toks.append(_Tok(kind, m.group(kind), col))
    toks.append(_Tok("eof", None, len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text: str, n_agents: int):
        self.text = text
        self.toks = _tokenize(text, n_agents)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str) -> FormulaSyntaxError:
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.value)
        return FormulaSyntaxError(f"{msg}, found {found}", t.col, self.text)

    def eat(self, kind: str) -> _Tok:
        t = self.tok
        if t.kind != kind:
            raise self.error(f"expected {kind!r}")
        self.i += 1
        return t

    def parse(self) -> Formula:
        f = self.eqv()
        if self.tok.kind != "eof":
            raise self.error("unexpected token")
        return f

    def eqv(self) -> Formula:
        a = self.biimp()
        if self.tok.kind == "eqv":
            self.i += 1
            b = self.biimp()
            if self.tok.kind == "eqv":
                raise self.error("'==' does not chain; add parentheses")
            return ident(a, b)
        return a

    def biimp(self) -> Formula:
        a = self.imp()
        if self.tok.kind == "iff":
            self.i += 1
            b = self.imp()
            if self.tok.kind == "iff":
                raise self.error("'<->' does not chain; add parentheses")
            return iff(a, b)
        return a

    def imp(self) -> Formula:
        a = self.disj()
        if self.tok.kind == "imp":
            self.i += 1
            return Imp(a, self.imp())
        return a

    def disj(self) -> Formula:
        a = self.conj()
        while self.tok.kind == "or":
            self.i += 1
            a = Or(a, self.conj())
        return a

    def conj(self) -> Formula:
        a = self.unary()
        while self.tok.kind == "and":
            self.i += 1
            a = And(a, self.unary())
        return a

    def unary(self) -> Formula:
        t = self.tok
        if t.kind == "not":
            self.i += 1
            return neg(self.unary())
        if t.kind == "box":
            self.i += 1
            return Box(self.unary())
        if t.kind == "dia":
            self.i += 1
            return dia(self.unary())
        if t.kind == "know":
            self.i += 1
            return Know(t.value, self.unary())
        if t.kind == "common":
            self.i += 1
            return Common(t.value, self.unary())
        return self.atom()

    def atom(self) -> Formula:
        t = self.tok
        if t.kind == "ident":
            self.i += 1
            return Var(t.value)
        if t.kind == "true":
            self.i += 1
            return TOP
        if t.kind == "false":
            self.i += 1
            return BOT
        if t.kind == "lp":
            self.i += 1
            f = self.eqv()
            self.eat("rp")
            return f
        raise self.error("expected a formula")


def parse(text: str, n_agents: int = 1) -> Formula:
    if n_agents < 1:
        raise ValueError("n_agents must be >= 1")
    return _Parser(text, n_agents).parse()


# --------------------------------------------------------------- printing

_ATOM, _UNARY, _AND, _OR, _IMP, _IFF, _EQV = 7, 6, 5, 4, 3, 2, 1


def _as_iff(f: Formula) -> tuple[Formula, Formula] | None:
    if (isinstance(f, And) and isinstance(f.left, Imp) and isinstance(f.right, Imp)
            and f.left.left == f.right.right and f.left.right == f.right.left):
        return f.left.left, f.left.right
    return None


def _render(f: Formula) -> tuple[str, int]:
    def sub(g: Formula, need: int) -> str:
        s, lvl = _render(g)
        return s if lvl >= need else f"({s})"

    if isinstance(f, Var):
        return f.name, _ATOM
    if isinstance(f, Bot):
        return "false", _ATOM
    if isinstance(f, Imp):
        if isinstance(f.right, Bot):
            if isinstance(f.left, Bot):
                return "true", _ATOM
            a = f.left
            if isinstance(a, Box) and isinstance(a.child, Imp) and isinstance(a.child.right, Bot):
                return "dia " + sub(a.child.left, _UNARY), _UNARY
            return "~" + sub(a, _UNARY), _UNARY
        return f"{sub(f.left, _IMP + 1)} -> {sub(f.right, _IMP)}", _IMP
    if isinstance(f, Box):
        pair = _as_iff(f.child)
        if pair is not None:
            return f"{sub(pair[0], _EQV + 1)} == {sub(pair[1], _EQV + 1)}", _EQV
        return "box " + sub(f.child, _UNARY), _UNARY
    if isinstance(f, And):
        pair = _as_iff(f)
        if pair is not None:
            return f"{sub(pair[0], _IFF + 1)} <-> {sub(pair[1], _IFF + 1)}", _IFF
        return f"{sub(f.left, _AND)} & {sub(f.right, _AND + 1)}", _AND
    if isinstance(f, Or):
        return f"{sub(f.left, _OR)} | {sub(f.right, _OR + 1)}", _OR
    if isinstance(f, Know):
        return f"K{f.agent} " + sub(f.child, _UNARY), _UNARY
    if isinstance(f, Common):
        return "C{" + ",".join(map(str, f.group)) + "} " + sub(f.child, _UNARY), _UNARY
    raise TypeError(f"not a formula: {f!r}")


def render(f: Formula) -> str:
    """Concrete syntax for ``f``; ``parse(render(f)) == f``."""
    return _render(f)[0]


# ------------------------------------------------------------ traversals

def _map_children(f: Formula, fn) -> Formula:
    if isinstance(f, (Var, Bot)):
        return f
    if isinstance(f, And):
        return And(fn(f.left), fn(f.right))
    if isinstance(f, Or):
        return Or(fn(f.left), fn(f.right))
    if isinstance(f, Imp):
        return Imp(fn(f.left), fn(f.right))
    if isinstance(f, Box):
        return Box(fn(f.child))
    if isinstance(f, Know):
        return Know(f.agent, fn(f.child))
    if isinstance(f, Common):
        return Common(f.group, fn(f.child))
    raise TypeError(f"not a formula: {f!r}")


def substitute_many(chi: Formula, mapping: Mapping[str, Formula]) -> Formula:
    """Simultaneous substitution of variables by formulas."""
    def go(f: Formula) -> Formula:
        if isinstance(f, Var):
            return mapping.get(f.name, f)
        return _map_children(f, go)
    return go(chi)


def substitute(chi: Formula, var: str, phi: Formula) -> Formula:
    """``chi[var := phi]``."""
    return substitute_many(chi, {var: phi})


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal, duplicates included."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, (And, Or, Imp)):
            stack.append(g.right)
            stack.append(g.left)
        elif isinstance(g, (Box, Know, Common)):
            stack.append(g.child)


def variables(f: Formula) -> list[str]:
    """Variable names in order of first occurrence."""
    seen: dict[str, None] = {}
    for g in subformulas(f):
        if isinstance(g, Var):
            seen.setdefault(g.name)
    return list(seen)


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def is_propositional(f: Formula) -> bool:
    return not any(isinstance(g, (Box, Know, Common)) for g in subformulas(f))


def agents_of(f: Formula) -> set[int]:
    out: set[int] = set()
    for g in subformulas(f):
        if isinstance(g, Know):
            out.add(g.agent)
        elif isinstance(g, Common):
            out.update(g.group)
    return out


def in_language(f: Formula, language: Language, n_agents: int = 1) -> bool:
    for g in subformulas(f):
        if language is Language.FM_E:
            if isinstance(g, (Box, Common)) or (isinstance(g, Know) and g.agent != 1):
                return False
        elif isinstance(g, Know) and not 1 <= g.agent <= n_agents:
            return False
        elif isinstance(g, Common) and not (g.group and g.group[0] >= 1 and g.group[-1] <= n_agents):
            return False
    return True


def abstract_propositional(f: Formula) -> tuple[Formula, dict[str, Formula]]:
    """Replace variables and maximal modal subformulas by fresh atoms.

    Atoms are named ``p0, p1, ...`` in left-to-right order of first
    occurrence; equal subtrees share an atom.  Returns the propositional
    skeleton and the map atom -> replaced subformula.
    """
    table: dict[Formula, str] = {}

    def atom(g: Formula) -> Formula:
        name = table.get(g)
        if name is None:
            name = table[g] = f"p{len(table)}"
        return Var(name)

    def go(g: Formula) -> Formula:
        if isinstance(g, (Var, Box, Know, Common)):
            return atom(g)
        return _map_children(g, go)

    skeleton = go(f)
    return skeleton, {name: g for g, name in table.items()}


def expand_everyone(group: Iterable[int], n: int, phi: Formula, budget: int = 100_000) -> Formula:
    """``E_G^n phi`` fully expanded into K-conjunctions.

    Raises ValueError when the result would exceed ``budget`` nodes; the
    expansion has about ``|G|**n`` copies of ``phi``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    members = make_group(group)
    k = len(members)
    total = size(phi)
    for _ in range(n):
        total = k * (total + 1) + (k - 1)
        if total > budget:
            raise ValueError(f"E_G^{n} expansion exceeds node budget {budget}")
    f = phi
    for _ in range(n):
        f = conj(Know(i, f) for i in members)
    return f
