import pytest

from accessknow.commonkg import (bel_set, check_lemma1090, check_lemma1100, common_set,
                                 everyone_echo, g_closure, greatest_closed, is_intended)
from accessknow.kernel import Logic, LogicId
from accessknow.models import corpus_models, fixture

G = (1, 2)
Q, H, T, ONE = 1, 2, 3, 4      # 1/4, 1/2, 3/4, 1 on the 5-chain


def elems(cs):
    return set(cs.elements)


def brute_greatest(M, g):
    """Union of every subset of the carrier that is closed under g."""
    n = M.algebra.size
    union = set()
    for mask in range(1 << n):
        S = {m for m in range(n) if mask >> m & 1}
        if all(m in bel_set(M, i).elements and int(M.K(i)[m]) in S for m in S for i in g):
            union |= S
    return union


class TestFixtureSets:
    def test_a(self):
        A = fixture("A")
        assert elems(bel_set(A, 2)) == {H, T, ONE}
        assert common_set(A, G).elements == bel_set(A, 2).elements
        assert elems(g_closure(A, G, T)) == {T}
        assert elems(g_closure(A, G, Q)) == {Q, 0}
        assert elems(greatest_closed(A, G)) == {H, T, ONE}

    def test_b(self):
        B = fixture("B")
        assert elems(common_set(B, G)) == {T, ONE}
        assert elems(greatest_closed(B, G)) == {H, T, ONE}

    def test_c(self):
        C = fixture("C")
        P = {T, ONE}
        assert elems(greatest_closed(C, G)) == P
        assert elems(common_set(C, G)) == P
        for i in G:
            assert P < elems(bel_set(C, i))

    def test_top_closure(self):
        for name in "ABCD":
            M = fixture(name)
            for g in M.common:
                assert elems(g_closure(M, g, ONE)) == {ONE}


class TestIntended:
    def test_a_intended(self):
        rep = is_intended(fixture("A"))
        assert rep.intended and rep.consistent

    def test_b_not_intended_with_witness(self):
        B = fixture("B")
        rep = is_intended(B)
        assert not rep.intended and rep.consistent
        bad = [v for v in rep.verdicts if not v.by_sets]
        assert [v.group for v in bad] == [G]
        assert bad[0].witnesses == [H]
        assert g_closure(B, G, H).elements <= B.true_filter
        assert H not in common_set(B, G).elements

    def test_c_and_d_intended(self):
        for name in "CD":
            rep = is_intended(fixture(name))
            assert rep.intended and rep.consistent

    @pytest.mark.parametrize("name", "ABCD")
    def test_lemmas_on_fixtures(self, name):
        M = fixture(name)
        assert check_lemma1100(M) == []
        assert check_lemma1090(M) == []
        assert everyone_echo(M, G) == []


@pytest.mark.parametrize("logic", [LogicId(Logic.L5ACminus, 2), LogicId(Logic.L5AC, 2)],
                         ids=str)
def test_corpus_properties(logic):
    models = corpus_models(logic, per_algebra=3, seed=2)
    assert len(models) > 10
    for M in models:
        assert check_lemma1100(M) == []
        assert check_lemma1090(M) == []
        rep = is_intended(M)
        assert rep.consistent
        for g in M.common:
            greatest = greatest_closed(M, g).elements
            if M.algebra.size <= 8:
                assert set(greatest) == brute_greatest(M, g)
            for m in greatest:
                assert g_closure(M, g, m).elements <= greatest
            for h in M.common:
                if set(h) <= set(g):
                    assert common_set(M, g).elements <= common_set(M, h).elements


def test_requires_true_filter():
    with pytest.raises(ValueError):
        bel_set(fixture("IEL"), 1)
