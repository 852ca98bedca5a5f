import random

import pytest
from hypothesis import given, settings, strategies as st

from accessknow.ipc import (is_classical_tautology, is_int_instance, is_ipc_tautology,
                            kripke_countermodel)
from accessknow.syntax import BOT, And, Box, Imp, Know, Or, Var, neg, parse

from helpers import formulas_up_to

x, y = Var("x"), Var("y")

TAUTS = [
    "x -> y -> x",
    "(x -> y -> z) -> (x -> y) -> x -> z",
    "x & y -> x",
    "x -> x | y",
    "~~(x | ~x)",
    "~~~x -> ~x",
    "(x | y -> z) -> (x -> z) & (y -> z)",
    "((x -> y) -> x -> z) -> (x -> y) -> x -> z",
    "false -> x",
]
NON_TAUTS = [
    "x | ~x",
    "~~x -> x",
    "((x -> y) -> x) -> x",
    "(x -> y) | (y -> x)",
    "~x | ~~x",
    "(~x -> y | z) -> (~x -> y) | (~x -> z)",
]


@pytest.mark.parametrize("text", TAUTS)
def test_tautologies(text):
    f = parse(text)
    assert is_ipc_tautology(f)
    assert kripke_countermodel(f, 4) is None


@pytest.mark.parametrize("text", NON_TAUTS)
def test_non_tautologies_have_countermodels(text):
    f = parse(text)
    assert not is_ipc_tautology(f)
    km = kripke_countermodel(f, 5)
    assert km is not None
    assert km.is_persistent()
    assert not km.forces(0, f)


def test_excluded_middle_countermodel_shape():
    km = kripke_countermodel(parse("x | ~x"), 2)
    assert km.worlds == (0, 1)
    assert km.order == ((0, 1),)
    assert km.valuation == {0: frozenset(), 1: frozenset({"x"})}


def test_double_negation_countermodel_is_two_worlds():
    km = kripke_countermodel(parse("~~x -> x"), 2)
    assert km is not None and len(km.worlds) == 2


def test_rejects_modal_input():
    with pytest.raises(ValueError):
        is_ipc_tautology(Box(x))


def test_int_instances():
    assert not is_int_instance(Or(Box(x), neg(Box(x))))
    assert is_int_instance(Imp(Know(1, x), Imp(y, Know(1, x))))
    assert is_int_instance(Imp(And(x, y), x))
    assert not is_int_instance(Imp(Box(x), x))


def test_agreement_small_exhaustive():
    # size <= 5 here; the acceptance suite goes to size 8
    for f in formulas_up_to(5):
        assert is_ipc_tautology(f) == (kripke_countermodel(f, 5) is None), f


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_classical_subsumption_and_double_negation(seed):
    rng = random.Random(seed)
    pool = list(formulas_up_to(7))
    f = rng.choice(pool)
    if is_ipc_tautology(f):
        assert is_classical_tautology(f)
        assert is_ipc_tautology(neg(neg(f)))
    # Glivenko: classical tautologies are double-negation IPC theorems
    assert is_classical_tautology(f) == is_ipc_tautology(neg(neg(f)))


def test_bot_handling():
    assert is_ipc_tautology(Imp(BOT, x))
    assert not is_ipc_tautology(BOT)
