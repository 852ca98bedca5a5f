"""Small finite posets: enumeration up to isomorphism, downsets, upsets.

A poset on ``k`` points is a boolean ``k x k`` numpy matrix ``leq`` with
``leq[i, j]`` iff ``i <= j``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np


def transitive_closure(leq: np.ndarray) -> np.ndarray:
    r = leq.copy()
    np.fill_diagonal(r, True)
    for k in range(len(r)):
        r |= r[:, k:k + 1] & r[k:k + 1, :]
    return r


def is_partial_order(leq: np.ndarray) -> bool:
    k = len(leq)
    if not leq.diagonal().all():
        return False
    if (leq & leq.T & ~np.eye(k, dtype=bool)).any():
        return False
    return bool(((leq.astype(np.int64) @ leq.astype(np.int64) > 0) <= leq).all())


def _canonical(leq: np.ndarray) -> bytes:
    k = len(leq)
    best = None
    for perm in itertools.permutations(range(k)):
        p = np.array(perm)
        key = leq[np.ix_(p, p)].tobytes()
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def _posets(k: int) -> tuple[bytes, ...]:
    if k == 0:
        return (b"",)
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    found: dict[bytes, None] = {}
    for bits in range(1 << len(pairs)):
        leq = np.eye(k, dtype=bool)
        for b, (i, j) in enumerate(pairs):
            if bits >> b & 1:
                leq[i, j] = True
        if not is_partial_order(leq):
            continue
        found.setdefault(_canonical(leq))
    return tuple(sorted(found))


def enumerate_posets(k: int) -> list[np.ndarray]:
    """All posets on ``k`` points, one per isomorphism class, in a fixed order.

    Brute force over relations; fine for ``k <= 4`` (4096 candidates).
    """
    if k > 5:
        raise ValueError("brute-force poset enumeration is limited to 5 points")
    return [np.frombuffer(key, dtype=bool).reshape(k, k).copy() for key in _posets(k)]


def count_labeled_posets(k: int) -> int:
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    n = 0
    for bits in range(1 << len(pairs)):
        leq = np.eye(k, dtype=bool)
        for b, (i, j) in enumerate(pairs):
            if bits >> b & 1:
                leq[i, j] = True
        n += is_partial_order(leq)
    return n


def rooted_posets(k: int) -> list[np.ndarray]:
    """Posets on ``k`` points with least element 0, up to isomorphism."""
    out = []
    for rest in enumerate_posets(k - 1):
        leq = np.zeros((k, k), dtype=bool)
        leq[0, :] = True
        leq[1:, 1:] = rest
        out.append(leq)
    return out


def downsets(leq: np.ndarray) -> list[int]:
    """Down-closed subsets as bitmasks, sorted by (size, mask)."""
    k = len(leq)
    below = [sum(1 << i for i in range(k) if leq[i, j]) for j in range(k)]
    out = [m for m in range(1 << k)
           if all(below[j] & ~m == 0 for j in range(k) if m >> j & 1)]
    return sorted(out, key=lambda m: (bin(m).count("1"), m))


def upsets(leq: np.ndarray) -> list[int]:
    return downsets(leq.T)
