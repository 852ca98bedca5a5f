"""Intuitionistic propositional validity.

``is_ipc_tautology`` runs Dyckhoff's contraction-free calculus G4ip, which
terminates without loop checking.  ``kripke_countermodel`` is an independent
brute-force oracle over small rooted Kripke models.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .posets import rooted_posets, upsets
from .syntax import (And, Bot, Formula, Imp, Or, Var, abstract_propositional, is_propositional,
                     variables)

__all__ = [
    "is_ipc_tautology", "is_int_instance", "is_classical_tautology",
    "KripkeModel", "kripke_countermodel", "KripkeOracle",
]


def _check_propositional(f: Formula) -> None:
    if not is_propositional(f):
        raise ValueError(f"not a propositional formula: {f}")


# ------------------------------------------------------------------ G4ip

Sequent = tuple[frozenset, Formula]


def _replace(gamma: frozenset, old: Formula, *new: Formula) -> frozenset:
    return (gamma - {old}) | set(new)


@lru_cache(maxsize=200_000)
def _prove(gamma: frozenset, goal: Formula) -> bool:
    if goal in gamma or any(isinstance(a, Bot) for a in gamma):
        return True

    # invertible left rules
    for a in gamma:
        if isinstance(a, And):
            return _prove(_replace(gamma, a, a.left, a.right), goal)
        if isinstance(a, Or):
            return (_prove(_replace(gamma, a, a.left), goal)
                    and _prove(_replace(gamma, a, a.right), goal))
        if isinstance(a, Imp):
            b, d = a.left, a.right
            if isinstance(b, Bot):
                return _prove(gamma - {a}, goal)
            if isinstance(b, Var) and b in gamma:
                return _prove(_replace(gamma, a, d), goal)
            if isinstance(b, And):
                return _prove(_replace(gamma, a, Imp(b.left, Imp(b.right, d))), goal)
            if isinstance(b, Or):
                return _prove(_replace(gamma, a, Imp(b.left, d), Imp(b.right, d)), goal)

    # invertible right rules
    if isinstance(goal, And):
        return _prove(gamma, goal.left) and _prove(gamma, goal.right)
    if isinstance(goal, Imp):
        return _prove(gamma | {goal.left}, goal.right)

    # non-invertible choices
    if isinstance(goal, Or):
        if _prove(gamma, goal.left) or _prove(gamma, goal.right):
            return True
    for a in gamma:
        if isinstance(a, Imp) and isinstance(a.left, Imp):
            d = a.left.right
            rest = gamma - {a}
            if _prove(rest | {Imp(d, a.right)}, a.left) and _prove(rest | {a.right}, goal):
                return True
    return False


def is_ipc_tautology(f: Formula) -> bool:
    """True iff the propositional formula ``f`` is a theorem of IPC."""
    _check_propositional(f)
    return _prove(frozenset(), f)


@lru_cache(maxsize=100_000)
def is_int_instance(f: Formula) -> bool:
    """True iff ``f`` is a substitution instance of an IPC tautology.

    Theoremhood in IPC is closed under substitution, and every instance
    arises from its most general propositional skeleton, so it suffices to
    decide that skeleton.
    """
    skeleton, _ = abstract_propositional(f)
    return _prove(frozenset(), skeleton)


def is_classical_tautology(f: Formula) -> bool:
    _check_propositional(f)
    names = variables(f)
    for bits in itertools.product((False, True), repeat=len(names)):
        if not _classical(f, dict(zip(names, bits))):
            return False
    return True


def _classical(f: Formula, v: dict[str, bool]) -> bool:
    if isinstance(f, Var):
        return v[f.name]
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return _classical(f.left, v) and _classical(f.right, v)
    if isinstance(f, Or):
        return _classical(f.left, v) or _classical(f.right, v)
    if isinstance(f, Imp):
        return (not _classical(f.left, v)) or _classical(f.right, v)
    raise ValueError(f"not propositional: {f}")


# --------------------------------------------------------- Kripke oracle

@dataclass(frozen=True)
class KripkeModel:
    """Rooted intuitionistic Kripke model; world 0 is the root."""

    worlds: tuple[int, ...]
    order: tuple[tuple[int, int], ...]          # pairs (w, v) with w <= v, w != v
    valuation: dict[int, frozenset[str]]

    def leq(self, w: int, v: int) -> bool:
        return w == v or (w, v) in self.order

    def forces(self, w: int, f: Formula) -> bool:
        if isinstance(f, Var):
            return f.name in self.valuation[w]
        if isinstance(f, Bot):
            return False
        if isinstance(f, And):
            return self.forces(w, f.left) and self.forces(w, f.right)
        if isinstance(f, Or):
            return self.forces(w, f.left) or self.forces(w, f.right)
        if isinstance(f, Imp):
            return all(not self.forces(v, f.left) or self.forces(v, f.right)
                       for v in self.worlds if self.leq(w, v))
        raise ValueError(f"not propositional: {f}")

    def is_persistent(self) -> bool:
        return all(self.valuation[w] <= self.valuation[v]
                   for w in self.worlds for v in self.worlds if self.leq(w, v))

    def describe(self) -> str:
        lines = [f"worlds: {' '.join(map(str, self.worlds))}",
                 "order: " + (" ".join(f"{w}<{v}" for w, v in self.order) or "-")]
        for w in self.worlds:
            atoms = ",".join(sorted(self.valuation[w])) or "-"
            lines.append(f"V({w}) = {atoms}")
        return "\n".join(lines)


class KripkeOracle:
    """All rooted models up to ``max_worlds`` over fixed atoms, evaluated in bulk.

    Each model is a rooted poset (up to isomorphism) with one upset per atom.
    Forcing sets are bitmasks over worlds, one entry per model, so a formula
    is evaluated for every model at once with numpy.
    """

    def __init__(self, atoms: tuple[str, ...], max_worlds: int):
        if max_worlds < 1:
            raise ValueError("max_worlds must be >= 1")
        self.atoms = atoms
        self.max_worlds = max_worlds
        posets, ups_rows, vals = [], [], []
        for k in range(1, max_worlds + 1):
            for leq in rooted_posets(k):
                up = [sum(1 << v for v in range(k) if leq[w, v]) for w in range(k)]
                row = up + [0] * (max_worlds - k)
                for choice in itertools.product(upsets(leq), repeat=len(atoms)):
                    posets.append(leq)
                    ups_rows.append(row)
                    vals.append(choice)
        self._posets = posets
        self.up = np.array(ups_rows, dtype=np.int64)               # (models, worlds)
        self.nworlds = np.array([len(p) for p in posets], dtype=np.int64)
        self.full = (np.int64(1) << self.nworlds) - 1
        self.val = np.array(vals, dtype=np.int64).reshape(len(posets), len(atoms))
        self._memo: dict[Formula, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self._posets)

    def forcing(self, f: Formula) -> np.ndarray:
        hit = self._memo.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Var):
            out = self.val[:, self.atoms.index(f.name)]
        elif isinstance(f, Bot):
            out = np.zeros(len(self), dtype=np.int64)
        elif isinstance(f, And):
            out = self.forcing(f.left) & self.forcing(f.right)
        elif isinstance(f, Or):
            out = self.forcing(f.left) | self.forcing(f.right)
        elif isinstance(f, Imp):
            bad = self.forcing(f.left) & ~self.forcing(f.right) & self.full
            out = np.zeros(len(self), dtype=np.int64)
            for w in range(self.max_worlds):
                ok = (self.up[:, w] & bad) == 0
                out |= np.where(ok & (w < self.nworlds), np.int64(1) << w, 0)
        else:
            raise ValueError(f"not propositional: {f}")
        self._memo[f] = out
        return out

    def first_countermodel(self, f: Formula) -> int | None:
        refuted = np.flatnonzero((self.forcing(f) & 1) == 0)
        return int(refuted[0]) if len(refuted) else None

    def model(self, index: int) -> KripkeModel:
        leq = self._posets[index]
        k = len(leq)
        worlds = tuple(range(k))
        order = tuple((w, v) for w in worlds for v in worlds if w != v and leq[w, v])
        valuation = {w: frozenset(a for a, mask in zip(self.atoms, self.val[index])
                                  if int(mask) >> w & 1)
                     for w in worlds}
        return KripkeModel(worlds, order, valuation)


@lru_cache(maxsize=32)
def _oracle(atoms: tuple[str, ...], max_worlds: int) -> KripkeOracle:
    return KripkeOracle(atoms, max_worlds)


def kripke_countermodel(f: Formula, max_worlds: int) -> KripkeModel | None:
    """Smallest rooted Kripke model whose root does not force ``f``, if any.

    Models are tried by increasing number of worlds; ``None`` means no
    countermodel exists within the bound.
    """
    _check_propositional(f)
    oracle = _oracle(tuple(sorted(variables(f))), max_worlds)
    idx = oracle.first_countermodel(f)
    return None if idx is None else oracle.model(idx)
