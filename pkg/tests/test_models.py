import numpy as np
import pytest

from accessknow import _kernels
from accessknow.heyting import algebra_corpus, chain_algebra
from accessknow.kernel import Logic, LogicId
from accessknow.models import (FIXTURES, ModelExpansion, UnboundVariable, axiom_instances,
                               certified_theorems, check_box_collapse, check_lemma815,
                               corpus_models, countermodel_search, evaluate, fixture,
                               format_model, is_model, parse_model, satisfies, soundness_sweep,
                               theorem_truth, valid_in, validate_def810, validate_thm870,
                               validator_agreement)
from accessknow.models.generate import (candidate_stream, knowledge_bounds, monotone_tables,
                                        random_expansion)
from accessknow.syntax import TOP, Box, Imp, Know, Or, Var, neg, parse

x = Var("x")
IEL = LogicId(Logic.IEL)
L5 = LogicId(Logic.L5)
EL5 = LogicId(Logic.EL5)
ACM = LogicId(Logic.L5ACminus, 2)
AC = LogicId(Logic.L5AC, 2)
ALL = (IEL, L5, EL5, ACM, AC)
HALF, QUARTER = 2, 1


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    if request.param == "numpy":
        monkeypatch.setattr(_kernels, "HAVE_NUMBA", False)
    elif not _kernels.HAVE_NUMBA:
        pytest.skip("numba unavailable")
    return request.param


class TestFixtures:
    @pytest.mark.parametrize("name", "ABC")
    @pytest.mark.parametrize("logic", (L5, EL5, ACM, AC), ids=str)
    def test_valid(self, backend, name, logic):
        M = fixture(name)
        for rep in (validate_def810(logic, M), validate_thm870(logic, M)):
            assert rep.valid, rep.lines()

    def test_d_fails_only_introspection(self, backend):
        M = fixture("D")
        r810, r870 = validate_def810(AC, M), validate_thm870(AC, M)
        assert r810.failed() == ["(g)"]
        assert r870.failed() == ["introspection"]
        assert r870.get("introspection").witness == "G={1,2}, m=3/4"
        assert validate_def810(ACM, M).valid and validate_thm870(ACM, M).valid

    def test_iel_fixture(self, backend):
        M = fixture("IEL")
        r810 = validate_def810(IEL, M)
        assert r810.valid
        assert {"(iii)(a)", "(iii)(c)", "(IntCo)"} <= {r.condition for r in r810.results}
        assert validate_thm870(IEL, M).valid

    def test_box_forced_to_top_breaks_ii(self, backend):
        M = fixture("A")
        bad = M.with_tables(box=np.full(5, 4))
        rep = validate_def810(AC, bad)
        assert rep.failed() == ["(ii)"]
        assert rep.get("(ii)").witness == "m=0"
        assert validate_thm870(AC, bad).failed() == ["(B)"]

    def test_unknown_fixture(self):
        with pytest.raises(ValueError):
            fixture("Z")


class TestSemantics:
    def test_top_and_tables(self):
        A = fixture("A")
        assert evaluate(A, {}, TOP) == 4
        assert evaluate(A, {"x": HALF}, Know(2, x)) == HALF
        assert evaluate(A, {"x": QUARTER}, Know(2, x)) == 0
        assert all(evaluate(A, {"x": m}, Box(x)) in (0, 4) for m in range(5))

    def test_satisfaction_clauses(self):
        assert not satisfies(IEL, fixture("IEL"), {"x": 1}, x)
        A = fixture("A")
        assert satisfies(AC, A, {"x": QUARTER}, x)
        assert not satisfies(AC, A, {"x": QUARTER}, Box(x))
        # TND is designated but not top
        assert evaluate(A, {"x": QUARTER}, Or(x, neg(x))) == QUARTER
        with pytest.raises(ValueError):
            satisfies(L5, A, {"x": 1}, Know(1, x))

    def test_unbound(self):
        with pytest.raises(UnboundVariable):
            evaluate(fixture("A"), {}, x)

    def test_valid_in(self):
        A = fixture("A")
        assert valid_in(AC, A, Imp(Know(1, x), x)) is None
        assert valid_in(AC, A, Or(x, neg(x))) is None
        assert valid_in(AC, A, Imp(x, Box(x))) == {"x": QUARTER}


class TestFiles:
    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_round_trip(self, name):
        M = fixture(name)
        back = parse_model(format_model(M))
        assert format_model(back) == format_model(M)
        assert back.true_filter == M.true_filter

    @pytest.mark.parametrize("text", [
        "elements 2\norder: 0<1\nK1: 0->0\n",
        "elements 2\norder: 0<1\nK1: 0->0 1->5\n",
        "elements 2\norder: 0<1\nK2: 0->0 1->1\n",
        "elements 2\norder: 0<1\nwhat: 0->0\n",
    ])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            parse_model(text)


class TestGeneration:
    def test_monotone_tables_are_monotone_and_bounded(self):
        H = chain_algebra(4)
        lo, up = knowledge_bounds(Logic.L5AC, H)
        tables = list(monotone_tables(H, lo, up))
        # monotone, deflationary, top fixed on a 4-chain: f(0)=0 and a
        # monotone choice below the identity on the middle elements
        assert len(tables) == 5
        for t in tables:
            assert t[3] == 3 and (t <= np.arange(4)).all() and (np.diff(t) >= 0).all()

    def test_random_expansions_respect_bounds(self):
        rng = np.random.default_rng(0)
        for H in algebra_corpus()[:10]:
            M = random_expansion(AC, H, None, rng)
            assert not check_lemma815(M)

    def test_candidate_stream_is_deterministic(self):
        a = [format_model(M) for M in candidate_stream(AC, 30, seed=5)]
        b = [format_model(M) for M in candidate_stream(AC, 30, seed=5)]
        assert a == b


@pytest.mark.parametrize("logic", ALL, ids=str)
def test_validators_agree_on_stream(backend, logic):
    total, valid, dis = validator_agreement(logic, 600, seed=11)
    assert total == 600 and 0 < valid < total
    assert not dis


def test_backends_agree_bit_for_bit(monkeypatch):
    if not _kernels.HAVE_NUMBA:
        pytest.skip("numba unavailable")
    for logic in (EL5, AC):
        for M in candidate_stream(logic, 300, seed=2):
            runs = []
            for flag in (True, False):
                monkeypatch.setattr(_kernels, "HAVE_NUMBA", flag)
                runs.append([(r.lines()) for r in (validate_def810(logic, M),
                                                   validate_thm870(logic, M))])
            assert runs[0] == runs[1]


class TestSweeps:
    @pytest.mark.parametrize("logic", ALL, ids=str)
    def test_soundness_and_theorems(self, logic):
        models = corpus_models(logic, per_algebra=2, seed=1)
        assert models
        assert soundness_sweep(logic, models).ok
        thms = certified_theorems(logic)
        assert thms
        assert theorem_truth(logic, models, thms).ok

    def test_axiom_instances_cover_every_scheme(self):
        seen = {i.scheme for i in axiom_instances(AC)}
        assert seen == set(AC.schemes)

    def test_sweep_catches_a_broken_model(self):
        # drop the validity check: K1 = constant top breaks reflection (S6)
        A = fixture("A")
        know = A.know.copy()
        know[0] = 4
        bad = A.with_tables(know=know)
        rep = soundness_sweep(AC, [bad])
        assert not rep.ok
        assert any(v.what == "S6" for v in rep.violations)

    @pytest.mark.parametrize("name", "ABCD")
    def test_lemma815_and_box_collapse(self, name):
        M = fixture(name)
        assert check_lemma815(M) == []
        assert check_box_collapse(M, ACM) == []

    def test_hierarchy(self):
        for M in candidate_stream(AC, 800, seed=4):
            if is_model(AC, M):
                assert is_model(ACM, M)
            if is_model(ACM, M):
                for i in (1, 2):
                    H = M.algebra
                    assert (H.leq[M.K(i), np.arange(H.size)]).all()


class TestSearch:
    def test_coreflection_refuted(self):
        res = countermodel_search(AC, parse("x -> K1 x"), max_size=6)
        assert res.found is not None
        cm = res.found
        assert is_model(AC, cm.model)
        assert not satisfies(AC, cm.model, cm.assignment, parse("x -> K1 x"))

    def test_reflection_survives(self):
        res = countermodel_search(AC, parse("K1 x -> x"), max_size=6)
        assert res.found is None and res.exhausted

    def test_iel_reflection_refuted_but_not_coreflection(self):
        res = countermodel_search(IEL, parse("K1 x -> x"), max_size=6)
        assert res.found is not None and res.found.model.algebra.size == 3
        assert countermodel_search(IEL, parse("x -> K1 x"), max_size=6).found is None

    def test_introspection_only_fails_without_xv(self):
        f = parse("C{1,2} x -> C{1,2} C{1,2} x", 2)
        res = countermodel_search(ACM, f, max_size=5)
        assert res.found is not None and res.found.model.label == "D"

    def test_language_checked(self):
        with pytest.raises(ValueError):
            countermodel_search(L5, parse("K1 x"))


def test_structural_errors():
    H = chain_algebra(3)
    with pytest.raises(ValueError):
        ModelExpansion(H, know=np.array([[0, 1]]))
    with pytest.raises(ValueError):
        ModelExpansion(H, know=np.array([[0, 1, 2]]), common={(1, 2): [0, 1, 2]})
    with pytest.raises(ValueError):
        ModelExpansion(H, true_filter={7})
