"""Hand-built models on the 5-chain 0 < 1/4 < 1/2 < 3/4 < 1 with two agents.

Agent thresholds b(1) = 1/4, b(2) = 1/2; TRUE is every nonzero element
(the chain's only ultrafilter).  Indices: 0, 1/4, 1/2, 3/4, 1 -> 0..4.
"""

from __future__ import annotations

import numpy as np

from ..heyting import chain_algebra
from .expansion import ModelExpansion, box_table

_TRUE = frozenset({1, 2, 3, 4})


def _chain_model(k1, k2, c1, c2, c12, label: str) -> ModelExpansion:
    H = chain_algebra(5)
    return ModelExpansion(H, _TRUE, box_table(H), np.array([k1, k2]),
                          {(1,): c1, (2,): c2, (1, 2): c12}, label)


def fixture_a() -> ModelExpansion:
    """K_i(m) = m above b(i), else 0; C_G copies K of G's largest agent."""
    k1 = [0, 1, 2, 3, 4]
    k2 = [0, 0, 2, 3, 4]
    return _chain_model(k1, k2, k1, k2, k2, "A")


def fixture_b() -> ModelExpansion:
    """As A, but the pair's common knowledge only starts at 3/4."""
    k1 = [0, 1, 2, 3, 4]
    k2 = [0, 0, 2, 3, 4]
    return _chain_model(k1, k2, k1, k2, [0, 0, 0, 3, 4], "B")


def fixture_c() -> ModelExpansion:
    """Knowledge collapses to 1/4 outside P = {3/4, 1}; common knowledge lives on P."""
    k1 = [0, 1, 1, 3, 4]
    k2 = [0, 0, 1, 3, 4]
    on_p = [0, 0, 0, 3, 4]
    return _chain_model(k1, k2, k1, on_p, on_p, "C")


def fixture_d() -> ModelExpansion:
    """As C, but the pair's common knowledge shifts 3/4 down to 1/2 (top stays top)."""
    k1 = [0, 1, 1, 3, 4]
    k2 = [0, 0, 1, 3, 4]
    return _chain_model(k1, k2, k1, [0, 0, 0, 3, 4], [0, 0, 0, 2, 4], "D")


def fixture_iel() -> ModelExpansion:
    """IEL model on the 3-chain with K the identity."""
    H = chain_algebra(3)
    return ModelExpansion(H, know=np.array([[0, 1, 2]]), label="IEL3")


FIXTURES = {"A": fixture_a, "B": fixture_b, "C": fixture_c, "D": fixture_d,
            "IEL": fixture_iel}


def fixture(name: str) -> ModelExpansion:
    try:
        return FIXTURES[name.upper()]()
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}") from None
