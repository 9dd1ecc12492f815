import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import m3_tables
from finstone import corpus
from finstone.errors import (BottomViolation, NotBounded, NotDistributive, NotLattice,
                             TopViolation, TooLarge)
from finstone.lattice import (add_top, birkhoff_opens, birkhoff_points, booleanize,
                              check_hom, drop_top, from_tables, hom_from_labels,
                              identity_hom, join_irreducibles, natural_iso_to_opens,
                              point_of_filter, prime_filters, require_hom, round_trip_poset,
                              trivial, two)
from finstone.order import antichain, chain, isomorphism, validate_poset


def _ops(D):
    return (list(range(len(D))), D.join, D.meet, D.bottom)


# from_tables


def test_diamond_tables_validate(diamond_tables):
    E, J, M = diamond_tables
    assert oracles.is_distributive(E, lambda a, b: J[E.index(a)][E.index(b)],
                                   lambda a, b: M[E.index(a)][E.index(b)]) is None
    D, renaming = from_tables(E, J, M, "0", "1")
    assert len(D) == 4 and renaming == {"0": 0, "U": 1, "V": 2, "1": 3}
    assert isomorphism(D.irr, antichain(2)) is not None


def test_m3_is_not_distributive():
    E, J, M = m3_tables()
    j = lambda a, b: J[E.index(a)][E.index(b)]
    m = lambda a, b: M[E.index(a)][E.index(b)]
    assert oracles.is_distributive(E, j, m) is not None
    with pytest.raises(NotDistributive) as e:
        from_tables(E, J, M, "0", "1")
    a, b, c = e.value.witness
    assert m(a, j(b, c)) != j(m(a, b), m(a, c))


def test_two_from_tables():
    D, _ = from_tables(["0", "1"], [["0", "1"], ["1", "1"]], [["0", "0"], ["0", "1"]], "0", "1")
    assert len(D) == 2 and len(D.irr) == 1


def test_bad_tables(diamond_tables):
    E, J, M = diamond_tables
    with pytest.raises(BottomViolation):
        from_tables(E, J, M, "U", "1")
    with pytest.raises(TopViolation):
        from_tables(E, J, M, "0", "V")
    J2 = [row[:] for row in J]
    J2[1][2] = "U"
    with pytest.raises(NotLattice):
        from_tables(E, J2, M, "0", "1")
    with pytest.raises(NotLattice):
        from_tables(E, J[:3], M, "0", "1")


def test_tables_without_top_give_lower_bounded_view(diamond_tables):
    E, J, M = diamond_tables
    D, _ = from_tables(E, J, M, "0")
    assert not D.has_top
    with pytest.raises(NotBounded):
        booleanize(D)


# points and opens


def test_points_examples(chain3, diamond, two_lattice):
    assert isomorphism(birkhoff_points(chain3), chain(2)) is not None
    assert isomorphism(birkhoff_points(diamond), antichain(2)) is not None
    assert len(birkhoff_points(two_lattice)) == 1
    assert birkhoff_points(diamond).elements == ("U", "V")


def test_opens_examples():
    assert len(birkhoff_opens(antichain(2))) == 4
    assert len(birkhoff_opens(validate_poset([], []))) == 1
    D = birkhoff_opens(chain(2))
    assert len(D) == 3 and all(D.leq(a, b) or D.leq(b, a) for a in range(3) for b in range(3))


@pytest.mark.parametrize("D", corpus.lattice_corpus(4), ids=lambda D: f"size{len(D)}")
def test_irreducibles_match_brute_force(D):
    expected = oracles.join_irreducibles(list(range(len(D))), D.join, D.bottom)
    assert sorted(join_irreducibles(D)) == sorted(expected)


def test_round_trips_on_random_posets():
    rng = random.Random(3)
    for _ in range(60):
        P = corpus.random_poset(rng, rng.randint(0, 6))
        assert round_trip_poset(P) is not None
        D = birkhoff_opens(P)
        natural_iso_to_opens(D)
        Q = birkhoff_points(D)
        assert oracles.order_isomorphic(list(P.elements), P.leq, list(Q.elements), Q.leq) \
            if len(P) <= 5 else isomorphism(P, Q) is not None


def test_tables_round_trip_with_scrambled_names():
    rng = random.Random(5)
    for D0 in corpus.lattice_corpus(4):
        elements, join, meet, bottom, top = corpus.tables_of(D0, rng)
        D, renaming = from_tables(elements, join, meet, bottom, top)
        assert len(D) == len(D0)
        assert isomorphism(birkhoff_points(D), D0.irr) is not None
        # renaming respects the operations
        for a in elements:
            for b in elements:
                ia, ib = elements.index(a), elements.index(b)
                assert D.join(renaming[a], renaming[b]) == renaming[join[ia][ib]]


# prime filters


def test_prime_filters_examples(two_lattice, diamond, chain3):
    assert prime_filters(two_lattice) == [frozenset({1})]
    assert prime_filters(diamond) == [frozenset({1, 3}), frozenset({2, 3})]
    assert [sorted(F) for F in prime_filters(chain3)] == [[1, 2], [2]]


@pytest.mark.parametrize("D", corpus.lattice_corpus(3), ids=lambda D: f"size{len(D)}")
def test_prime_filters_match_subset_scan(D):
    got = set(prime_filters(D))
    assert got == set(oracles.prime_filters(list(range(len(D))), D.join, D.meet, D.bottom))
    # canonical bijection with points
    pts = sorted(point_of_filter(D, F) for F in got)
    assert pts == list(range(len(D.irr)))
    for F in got:
        k = point_of_filter(D, F)
        assert F == {u for u in range(len(D)) if D.leq(D.principal(k), u)}


def test_prime_filter_limit():
    with pytest.raises(TooLarge):
        prime_filters(birkhoff_opens(antichain(9)))


# homs


def test_check_hom_examples(diamond):
    assert check_hom(identity_hom(diamond)).ok
    good = hom_from_labels(diamond, two(), {"0": "0", "U": "1", "V": "0", "1": "1"}, bounded=True)
    assert check_hom(good).ok
    bad = hom_from_labels(diamond, two(), {"0": "0", "U": "1", "V": "1", "1": "0"})
    rep = check_hom(bad)
    assert not rep.ok and rep.law == "join"


def test_hom_composition(diamond):
    f = require_hom(hom_from_labels(diamond, two(), {"0": "0", "U": "1", "V": "0", "1": "1"}))
    g = identity_hom(two())
    assert f.then(g).mapping == f.mapping


# top adjunction and booleanization


def test_add_top_examples(two_lattice, diamond):
    assert len(add_top(two_lattice).lattice) == 3
    adj = add_top(diamond)
    assert len(adj.lattice) == 5
    assert adj.lattice.labels[-1] == "∞"
    assert len(add_top(trivial()).lattice) == 2
    for h in (adj.inclusion, adj.retraction, adj.section):
        assert check_hom(h).ok
    assert [adj.retraction(adj.section(i)) for i in range(2)] == [0, 1]


@pytest.mark.parametrize("D", corpus.lattice_corpus(4), ids=lambda D: f"size{len(D)}")
def test_drop_top_recovers(D):
    adj = add_top(D)
    D2, collapse = drop_top(adj.lattice)
    assert D2.masks == D.masks and D2.labels == D.labels
    assert all(collapse(adj.inclusion(u)) == u for u in range(len(D)))


def test_booleanize_examples(chain3, diamond):
    B, h = booleanize(chain3)
    assert len(B) == 4
    pts = B.irr.elements
    assert B.labels[h(1)] == "{" + pts[0] + "}"
    assert h(chain3.top) == B.top
    B2, h2 = booleanize(diamond)
    assert sorted(h2.mapping) == list(range(4)) and check_hom(h2).ok


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6), st.integers(0, 10 ** 6))
def test_booleanize_is_boolean_and_a_hom(n, seed):
    D = birkhoff_opens(corpus.random_poset(random.Random(seed), n))
    B, h = booleanize(D)
    assert B.is_boolean
    for u in range(len(B)):
        c = B.complement(u)
        assert c is not None and B.meet(u, c) == B.bottom and B.join(u, c) == B.top
    assert check_hom(h).ok and h.bounded


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6), st.integers(0, 10 ** 6))
def test_lattice_laws_hold(n, seed):
    D = birkhoff_opens(corpus.random_poset(random.Random(seed), n))
    els, j, m, bot = _ops(D)
    rng = random.Random(seed)
    for _ in range(30):
        a, b, c = (rng.choice(els) for _ in range(3))
        assert j(a, b) == j(b, a) and m(a, b) == m(b, a)
        assert j(a, m(a, b)) == a == m(a, j(a, b))
        assert m(a, j(b, c)) == j(m(a, b), m(a, c))
        assert j(a, bot) == a
