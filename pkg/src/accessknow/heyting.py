"""Finite Heyting algebras as operation tables, with filters and prime filters.

Elements are dense indices ``0..n-1``.  Orders built from downsets or
chains list the bottom first and the top last, but nothing relies on that:
``bot`` and ``top`` are stored explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .posets import downsets, enumerate_posets, is_partial_order, transitive_closure


class AlgebraError(ValueError):
    pass


class AlgebraFormatError(AlgebraError):
    """The algebra file itself is malformed (as opposed to not being Heyting)."""


@dataclass(frozen=True, eq=False)
class FilterSet:
    """A filter of a finite Heyting algebra, with its classification."""

    elements: frozenset[int]
    proper: bool
    prime: bool
    ultra: bool

    @property
    def mask(self) -> int:
        return sum(1 << m for m in self.elements)

    def __contains__(self, m: int) -> bool:
        return m in self.elements

    def __eq__(self, other) -> bool:
        return isinstance(other, FilterSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def kinds(self) -> str:
        out = ["filter"]
        out += [k for k, v in (("proper", self.proper), ("prime", self.prime),
                               ("ultra", self.ultra)) if v]
        return ",".join(out)


@dataclass(eq=False)
class HeytingAlgebra:
    leq: np.ndarray                  # bool (n, n)
    meet: np.ndarray                 # int (n, n)
    join: np.ndarray
    imp: np.ndarray
    bot: int
    top: int
    names: tuple[str, ...] = ()
    label: str = ""

    def __post_init__(self):
        if not self.names:
            self.names = tuple(str(m) for m in range(self.size))

    @property
    def size(self) -> int:
        return len(self.leq)

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"HeytingAlgebra({self.label or self.size})"

    @cached_property
    def neg(self) -> np.ndarray:
        return self.imp[:, self.bot].copy()

    def index(self, name: str | int) -> int:
        if isinstance(name, (int, np.integer)):
            return int(name)
        try:
            return self.names.index(name)
        except ValueError:
            if name.isdigit():
                return int(name)
            raise AlgebraError(f"unknown element {name!r}") from None

    # ------------------------------------------------------------ filters

    def filter_closure(self, seed: Iterable[int]) -> int:
        """Bitmask of the least filter containing ``seed`` (closure under MP)."""
        inside = np.zeros(self.size, dtype=bool)
        inside[self.top] = True
        inside[list(seed)] = True
        while True:
            # m' joins when some m in F has imp(m, m') in F
            new = (inside[:, None] & inside[self.imp]).any(axis=0) | inside
            if (new == inside).all():
                return int(sum(1 << int(m) for m in np.flatnonzero(inside)))
            inside = new

    def is_filter_mask(self, mask: int) -> bool:
        inside = np.array([(mask >> m) & 1 for m in range(self.size)], dtype=bool)
        if not inside[self.top]:
            return False
        return not (inside[:, None] & inside[self.imp] & ~inside[None, :]).any()

    def _is_prime_mask(self, mask: int) -> bool:
        if mask >> self.bot & 1:
            return False
        inside = np.array([(mask >> m) & 1 for m in range(self.size)], dtype=bool)
        return not (inside[self.join] & ~inside[:, None] & ~inside[None, :]).any()

    @cached_property
    def filters(self) -> tuple[FilterSet, ...]:
        return tuple(enumerate_filters(self))

    @cached_property
    def prime_filters(self) -> tuple[FilterSet, ...]:
        return tuple(f for f in self.filters if f.prime)

    @cached_property
    def ultrafilters(self) -> tuple[FilterSet, ...]:
        return tuple(f for f in self.filters if f.ultra)

    @cached_property
    def join_irreducible_top(self) -> bool:
        j = self.join
        t = self.top
        return not any(j[a, b] == t and a != t and b != t
                       for a in range(self.size) for b in range(self.size))

    @property
    def has_disjunction_property(self) -> bool:
        return self.join_irreducible_top

    def principal(self, a: int) -> frozenset[int]:
        return frozenset(int(m) for m in np.flatnonzero(self.leq[a]))

    def describe(self) -> str:
        lines = [f"elements {self.size}", "names " + " ".join(self.names)]
        covers = []
        for a in range(self.size):
            for b in range(self.size):
                if a != b and self.leq[a, b] and not any(
                        c not in (a, b) and self.leq[a, c] and self.leq[c, b]
                        for c in range(self.size)):
                    covers.append(f"{self.names[a]}<{self.names[b]}")
        lines.append("order: " + " ".join(covers))
        return "\n".join(lines)


def _bounds(leq: np.ndarray, lower: bool) -> np.ndarray:
    """Greatest lower bound (or least upper bound) table, -1 where missing."""
    n = len(leq)
    rel = leq if lower else leq.T           # rel[c, a]: c below a (resp. above)
    out = np.full((n, n), -1, dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            cand = np.flatnonzero(rel[:, a] & rel[:, b])
            best = [c for c in cand if rel[cand, c].all()]
            if best:
                out[a, b] = out[b, a] = best[0]
    return out


def from_order(leq: np.ndarray, names: Sequence[str] = (), label: str = "") -> HeytingAlgebra:
    """Build the algebra of a finite order matrix, or explain why there is none."""
    leq = np.asarray(leq, dtype=bool)
    n = len(leq)
    if n < 1:
        raise AlgebraError("empty carrier")
    if not is_partial_order(leq):
        raise AlgebraError("relation is not a partial order")
    bots = np.flatnonzero(leq.all(axis=1))
    tops = np.flatnonzero(leq.all(axis=0))
    if len(bots) != 1 or len(tops) != 1:
        raise AlgebraError("order is not bounded")
    meet = _bounds(leq, lower=True)
    join = _bounds(leq, lower=False)
    if (meet < 0).any():
        a, b = np.argwhere(meet < 0)[0]
        raise AlgebraError(f"not a lattice: no meet of {a} and {b}")
    if (join < 0).any():
        a, b = np.argwhere(join < 0)[0]
        raise AlgebraError(f"not a lattice: no join of {a} and {b}")
    imp = np.full((n, n), -1, dtype=np.int64)
    for a in range(n):
        for b in range(n):
            # {c | a & c <= b}; needs a greatest element
            cand = np.flatnonzero(leq[meet[a], b])
            best = [c for c in cand if leq[cand, c].all()]
            if not best:
                raise AlgebraError(f"no relative pseudo-complement of {a} with respect to {b}")
            imp[a, b] = best[0]
    names = tuple(names) if names else tuple(str(m) for m in range(n))
    if len(names) != n:
        raise AlgebraError(f"{len(names)} names for {n} elements")
    return HeytingAlgebra(leq, meet, join, imp, int(bots[0]), int(tops[0]), names, label)


def build_algebra(leq_pairs: Iterable[tuple[int, int]], size: int | None = None,
                  names: Sequence[str] = (), label: str = "") -> HeytingAlgebra:
    """Algebra generated by ``i <= j`` pairs (reflexive-transitive closure taken)."""
    pairs = [(int(a), int(b)) for a, b in leq_pairs]
    if size is None:
        size = max((max(p) for p in pairs), default=-1) + 1
    rel = np.eye(size, dtype=bool)
    for a, b in pairs:
        if not (0 <= a < size and 0 <= b < size):
            raise AlgebraError(f"pair {a}<{b} outside 0..{size - 1}")
        rel[a, b] = True
    return from_order(transitive_closure(rel), names, label)


def chain_algebra(n: int) -> HeytingAlgebra:
    """The n-element chain 0 < 1/(n-1) < ... < 1."""
    if n < 2:
        raise AlgebraError("a chain algebra needs at least 2 elements")
    idx = np.arange(n)
    leq = idx[:, None] <= idx[None, :]
    meet = np.minimum.outer(idx, idx)
    join = np.maximum.outer(idx, idx)
    imp = np.where(leq, n - 1, idx[None, :])
    names = tuple(str(Fraction(k, n - 1)) for k in range(n))
    return HeytingAlgebra(leq, meet, join, imp, 0, n - 1, names, f"chain{n}")


def downset_algebra(poset: np.ndarray, label: str = "") -> HeytingAlgebra:
    """Downsets of a finite poset ordered by inclusion."""
    ds = downsets(poset)
    pos = {m: k for k, m in enumerate(ds)}
    n = len(ds)
    arr = np.array(ds, dtype=np.int64)
    leq = (arr[:, None] & ~arr[None, :]) == 0
    meet = np.vectorize(lambda a, b: pos[ds[a] & ds[b]])(*np.indices((n, n)))
    join = np.vectorize(lambda a, b: pos[ds[a] | ds[b]])(*np.indices((n, n)))
    imp = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            # largest downset c with a & c <= b
            allowed = [c for c in range(n) if ds[a] & ds[c] & ~ds[b] == 0]
            imp[a, b] = max(allowed, key=lambda c: bin(ds[c]).count("1"))
    k = len(poset)
    names = tuple("{" + ",".join(str(p) for p in range(k) if m >> p & 1) + "}" for m in ds)
    return HeytingAlgebra(leq, meet.astype(np.int64), join.astype(np.int64), imp, 0, n - 1,
                          names, label)


def boolean_square() -> HeytingAlgebra:
    return build_algebra([(0, 1), (0, 2), (1, 3), (2, 3)], 4,
                         names=("0", "a", "b", "1"), label="bool4")


def algebra_corpus() -> list[HeytingAlgebra]:
    """Chains 2..6, downset algebras of all posets with 1-4 points, the Boolean square."""
    out = [chain_algebra(n) for n in range(2, 7)]
    for k in range(1, 5):
        for idx, p in enumerate(enumerate_posets(k)):
            out.append(downset_algebra(p, label=f"down{k}.{idx}"))
    out.append(boolean_square())
    return out


# ---------------------------------------------------------------- filters

def enumerate_filters(H: HeytingAlgebra) -> list[FilterSet]:
    """All filters, found by closing each element and then joining closures.

    Every filter of a finite algebra is principal, so the seeding already
    finds them all; the combination pass keeps the routine honest for the
    general definition.  Ordered by size, then bitmask.
    """
    masks = {H.filter_closure([m]) for m in range(H.size)}
    frontier = set(masks)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(masks):
                c = H.filter_closure([m for m in range(H.size) if (a | b) >> m & 1])
                if c not in masks:
                    new.add(c)
        masks |= new
        frontier = new
    ordered = sorted(masks, key=lambda m: (bin(m).count("1"), m))
    proper = [m for m in ordered if not m >> H.bot & 1]
    out = []
    for m in ordered:
        is_proper = not m >> H.bot & 1
        ultra = is_proper and not any(o != m and (o & m) == m for o in proper)
        elems = frozenset(i for i in range(H.size) if m >> i & 1)
        out.append(FilterSet(elems, is_proper, H._is_prime_mask(m), ultra))
    return out


def filters_by_subset_scan(H: HeytingAlgebra) -> list[int]:
    """Reference enumeration straight from the definition (size <= 16)."""
    if H.size > 16:
        raise ValueError("subset scan is limited to 16 elements")
    return [m for m in range(1 << H.size) if H.is_filter_mask(m)]


@dataclass
class Lemma700Report:
    algebra: str
    results: dict[str, bool] = field(default_factory=dict)
    counterexamples: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def lines(self) -> list[str]:
        out = []
        for clause, ok in self.results.items():
            extra = self.counterexamples.get(clause, "")
            out.append(f"{clause}: {'pass' if ok else 'FAIL'}" + (f"  {extra}" if extra else ""))
        return out


def check_lemma700(H: HeytingAlgebra) -> Lemma700Report:
    """Exhaustively check the three prime-filter facts on ``H``."""
    rep = Lemma700Report(H.label or f"size{H.size}")
    primes = [f.elements for f in H.prime_filters]
    full = frozenset(range(H.size))

    ok = True
    for F in H.filters:
        if not F.proper:
            continue
        covering = [P for P in primes if F.elements <= P]
        meet = frozenset.intersection(*covering) if covering else full
        if meet != F.elements:
            ok = False
            rep.counterexamples["i"] = f"filter {sorted(F.elements)}"
            break
    rep.results["i"] = ok

    ok = True
    for F in H.filters:
        above = [P for P in primes if F.elements <= P]
        for a in range(H.size):
            for b in range(H.size):
                lhs = int(H.imp[a, b]) in F.elements
                rhs = all(b in P for P in above if a in P)
                if lhs != rhs:
                    ok = False
                    rep.counterexamples["ii"] = f"filter {sorted(F.elements)}, a={a}, b={b}"
                    break
            if not ok:
                break
        if not ok:
            break
    rep.results["ii"] = ok

    if frozenset({H.top}) in primes:
        ok = True
        for a in range(H.size):
            for b in range(H.size):
                if bool(H.leq[a, b]) != all(b in P for P in primes if a in P):
                    ok = False
                    rep.counterexamples["iii"] = f"a={a}, b={b}"
                    break
            if not ok:
                break
        rep.results["iii"] = ok
    else:
        rep.results["iii"] = True
        rep.counterexamples["iii"] = "vacuous: {top} is not prime"
    return rep


# ------------------------------------------------------------ file format

def parse_algebra(text: str) -> HeytingAlgebra:
    """Read ``elements n`` / ``names ...`` / ``order: a<b ...`` lines."""
    size, names, pairs = None, (), []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        key = key.rstrip(":").lower()
        if key == "elements":
            try:
                size = int(rest)
            except ValueError:
                raise AlgebraFormatError(f"line {lineno}: bad element count {rest!r}") from None
        elif key == "names":
            names = tuple(rest.split())
        elif key == "order":
            for tok in rest.split():
                # commas separate pairs; names such as {0,1} keep theirs
                parts = tok.rstrip(",").split("<")
                if len(parts) < 2:
                    raise AlgebraFormatError(f"line {lineno}: bad order pair {tok!r}")
                pairs += list(zip(parts, parts[1:]))
        else:
            raise AlgebraFormatError(f"line {lineno}: unknown directive {key!r}")
    if size is None:
        raise AlgebraFormatError("missing 'elements n' line")

    def ix(tok: str) -> int:
        if tok in names:
            return names.index(tok)
        if tok.isdigit() and int(tok) < size:
            return int(tok)
        raise AlgebraFormatError(f"unknown element {tok!r}")

    return build_algebra([(ix(a), ix(b)) for a, b in pairs], size, names)
