import itertools

import numpy as np
import pytest

from accessknow.heyting import (AlgebraError, AlgebraFormatError, algebra_corpus, boolean_square,
                                build_algebra, chain_algebra, check_lemma700, enumerate_filters,
                                filters_by_subset_scan, parse_algebra)
from accessknow.posets import enumerate_posets

CORPUS = algebra_corpus()


def brute_imp(H, a, b):
    cands = [c for c in range(H.size) if H.leq[H.meet[a, c], b]]
    top = [c for c in cands if all(H.leq[d, c] for d in cands)]
    assert len(top) == 1
    return top[0]


def test_corpus_shape():
    # 1, 2, 5, 16 posets on 1..4 points up to isomorphism
    assert [len(enumerate_posets(k)) for k in range(1, 5)] == [1, 2, 5, 16]
    assert len(CORPUS) == 30
    assert all(H.size <= 16 for H in CORPUS)


@pytest.mark.parametrize("H", CORPUS, ids=lambda H: H.label)
def test_lattice_laws_and_residuation(H):
    n = range(H.size)
    M, J, L = H.meet, H.join, H.leq
    for a, b in itertools.product(n, n):
        assert M[a, b] == M[b, a] and J[a, b] == J[b, a]
        assert M[a, J[a, b]] == a and J[a, M[a, b]] == a
        assert H.imp[a, b] == brute_imp(H, a, b)
        assert bool(L[a, b]) == (H.imp[a, b] == H.top)
        for c in n:
            assert M[a, M[b, c]] == M[M[a, b], c]
            assert J[a, J[b, c]] == J[J[a, b], c]
            assert bool(L[M[a, c], b]) == bool(L[c, H.imp[a, b]])


@pytest.mark.parametrize("H", CORPUS, ids=lambda H: H.label)
def test_filters_against_subset_scan(H):
    masks = sorted(sum(1 << m for m in F.elements) for F in H.filters)
    assert masks == sorted(filters_by_subset_scan(H))
    # flags straight from the definitions
    proper = [F.elements for F in H.filters if F.proper]
    for F in H.filters:
        assert F.proper == (H.bot not in F.elements)
        prime = F.proper and all(a in F.elements or b in F.elements
                                 for a in range(H.size) for b in range(H.size)
                                 if H.join[a, b] in F.elements)
        assert F.prime == prime
        assert F.ultra == (F.proper and not any(F.elements < P for P in proper))


@pytest.mark.parametrize("H", CORPUS, ids=lambda H: H.label)
def test_disjunction_property_three_ways(H):
    top_prime = frozenset({H.top}) in [F.elements for F in H.prime_filters]
    join_irr = not any(H.join[a, b] == H.top for a in range(H.size) for b in range(H.size)
                       if a != H.top and b != H.top)
    assert H.has_disjunction_property == top_prime == join_irr


@pytest.mark.parametrize("H", CORPUS, ids=lambda H: H.label)
def test_lemma700(H):
    rep = check_lemma700(H)
    assert rep.ok, rep.lines()


def test_three_chain():
    H = chain_algebra(3)
    assert H.names == ("0", "1/2", "1")
    assert H.imp[1, 0] == 0 and H.imp[0, 1] == 2
    assert H.neg[1] == 0
    fs = {F.elements: F for F in H.filters}
    assert fs[frozenset({2})].prime and not fs[frozenset({2})].ultra
    assert fs[frozenset({1, 2})].ultra
    assert [F.elements for F in H.ultrafilters] == [frozenset({1, 2})]


def test_two_chain_is_boolean():
    H = chain_algebra(2)
    assert H.imp.tolist() == [[1, 1], [0, 1]]
    (U,) = H.ultrafilters
    assert U.elements == frozenset({1}) and U.prime


def test_boolean_square():
    H = boolean_square()
    primes = sorted(sorted(F.elements) for F in H.prime_filters)
    assert primes == [[1, 3], [2, 3]]
    assert not H.has_disjunction_property
    rep = check_lemma700(H)
    assert rep.ok and "vacuous" in rep.counterexamples["iii"]


def test_diamond_m3_is_rejected():
    with pytest.raises(AlgebraError):
        build_algebra([(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], 5)


@pytest.mark.parametrize("pairs,size", [
    ([(0, 1), (1, 0)], 2),                    # not antisymmetric
    ([(0, 1), (0, 2)], 3),                    # no top
    ([(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)], 6),   # no join of 1, 2
])
def test_bad_orders(pairs, size):
    with pytest.raises(AlgebraError):
        build_algebra(pairs, size)


def test_chain_needs_two():
    with pytest.raises(AlgebraError):
        chain_algebra(1)


def test_parse_algebra():
    H = parse_algebra("# a diamond\nelements 4\nnames 0 a b 1\norder: 0<a<1 0<b<1\n")
    assert H.size == 4 and not H.has_disjunction_property
    assert H.imp[H.index("a"), H.index("b")] == H.index("b")
    for bad in ("order: 0<1\n", "elements x\n", "elements 2\nfoo 1\n", "elements 2\norder: 0<7\n"):
        with pytest.raises(AlgebraFormatError):
            parse_algebra(bad)


def test_describe_round_trip():
    for H in CORPUS:
        back = parse_algebra(H.describe())
        assert np.array_equal(back.leq, H.leq) and back.names == H.names


def test_enumerate_filters_order_is_stable():
    H = chain_algebra(4)
    assert [sorted(F.elements) for F in enumerate_filters(H)] == [
        [3], [2, 3], [1, 2, 3], [0, 1, 2, 3]]
