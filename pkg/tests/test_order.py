import os
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from finstone import corpus
from finstone.errors import (DuplicateElement, NotAntisymmetric, NotDownward, NotReflexive,
                             NotTransitive, TooLarge, UnknownElement)
from finstone.order import (DownSet, antichain, chain, downset_masks, downsets, height,
                            incidence_algebra, isomorphism, principal_downset,
                            validate_poset)


# validation


def test_two_chain_with_reflexive_pairs():
    P = validate_poset(["a", "b"], [("a", "a"), ("b", "b"), ("a", "b")],
                       implicit_reflexive=False)
    assert P.leq("a", "b") and not P.leq("b", "a")


def test_antisymmetry_violation_names_pair():
    with pytest.raises(NotAntisymmetric) as e:
        validate_poset(["a", "b"], [("a", "b"), ("b", "a")])
    assert e.value.witness == ["a", "b"]


def test_transitivity_violation_names_triple():
    with pytest.raises(NotTransitive) as e:
        validate_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert e.value.witness == ["a", "b", "c"]


def test_missing_reflexive_pair_rejected_when_explicit():
    with pytest.raises(NotReflexive):
        validate_poset(["a"], [], implicit_reflexive=False)


def test_duplicate_and_unknown_elements():
    with pytest.raises(DuplicateElement):
        validate_poset(["a", "a"], [])
    with pytest.raises(UnknownElement):
        validate_poset(["a"], [("a", "z")])


# downsets


def test_downsets_of_empty_poset():
    assert downset_masks(validate_poset([], [])) == [0]


def test_downsets_of_antichain_and_chain():
    A = antichain(2, "x")
    assert [d.members for d in downsets(A)] == [[], ["x0"], ["x1"], ["x0", "x1"]]
    C = validate_poset(["a", "b"], [("a", "b")])
    assert [d.members for d in downsets(C)] == [[], ["a"], ["a", "b"]]


def test_downset_rejects_non_downward_set():
    C = validate_poset(["a", "b"], [("a", "b")])
    with pytest.raises(NotDownward):
        DownSet(C, 0b10)


def _check_downsets(P):
    got = downset_masks(P)
    expected = sorted(P.mask_of(s) for s in oracles.downsets(P.elements, P.leq))
    assert got == expected
    assert got[0] == 0 and got[-1] == P.full
    gs = set(got)
    assert all(a | b in gs and a & b in gs for a in got for b in got)


@pytest.mark.parametrize("P", corpus.all_posets(5), ids=lambda P: f"n{len(P)}")
def test_downsets_match_subset_scan_exhaustive(P):
    _check_downsets(P)


def test_downsets_match_subset_scan_random():
    rng = random.Random(11)
    for _ in range(200):
        _check_downsets(corpus.random_poset(rng, rng.randint(0, 8)))


def test_poset_size_and_budget_limits(monkeypatch):
    with pytest.raises(TooLarge):
        downset_masks(antichain(21))
    with pytest.raises(TooLarge):
        downset_masks(antichain(6), budget=10)
    monkeypatch.setenv("FINSTONE_BUDGET", "10")
    with pytest.raises(TooLarge):
        downset_masks(antichain(6))
    monkeypatch.delenv("FINSTONE_BUDGET")
    assert len(downset_masks(antichain(6))) == 64


def test_poset_counts_up_to_isomorphism():
    # number of unlabeled posets on n points
    assert [len(corpus.posets_of_size(n)) for n in range(6)] == [1, 1, 2, 5, 16, 63]


def test_corpus_posets_pairwise_non_isomorphic():
    for n in range(5):
        ps = corpus.posets_of_size(n)
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                assert isomorphism(ps[i], ps[j]) is None


# principal downsets and heights


def test_principal_downsets():
    C = validate_poset(["a", "b"], [("a", "b")])
    assert principal_downset(C, "b").members == ["a", "b"]
    assert principal_downset(C, "a").members == ["a"]
    assert principal_downset(antichain(2, "a"), "a0").members == ["a0"]
    with pytest.raises(UnknownElement):
        principal_downset(C, "z")


def test_heights():
    assert set(height(antichain(3)).values()) == {0}
    assert height(validate_poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])) \
        == {"a": 0, "b": 1, "c": 2}
    D = validate_poset(["0", "u", "v", "1"],
                       [("0", "u"), ("0", "v"), ("0", "1"), ("u", "1"), ("v", "1")])
    assert height(D) == {"0": 0, "u": 1, "v": 1, "1": 2}


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 8), st.integers(0, 10 ** 6))
def test_height_strictly_increasing_and_matches_oracle(n, seed):
    P = corpus.random_poset(random.Random(seed), n)
    h = height(P)
    assert h == oracles.heights(P.elements, P.leq)
    for p in P.elements:
        for q in P.elements:
            if p != q and P.leq(p, q):
                assert h[p] < h[q]


# incidence algebras


def test_incidence_algebra_of_two_chain():
    C = validate_poset(["a", "b"], [("a", "b")])
    I = incidence_algebra(C)
    assert I.rank == 3
    mu = I.moebius()
    assert (I.value(mu, "a", "a"), I.value(mu, "a", "b"), I.value(mu, "b", "b")) == (1, -1, 1)
    assert I.multiply(mu, I.zeta()) == I.delta()


def test_incidence_algebra_of_point():
    I = incidence_algebra(chain(1))
    assert I.rank == 1 and I.moebius() == I.delta()


def test_moebius_of_boolean_lattice_is_signed():
    # on a powerset mu(S, T) = (-1)^{|T| - |S|}
    from finstone.lattice import birkhoff_opens
    L = birkhoff_opens(antichain(3))
    I = incidence_algebra(L.as_poset())
    mu = I.moebius()
    size = lambda i: bin(L.masks[i]).count("1")
    for (i, j), k in I.position.items():
        assert mu[k] == (-1) ** (size(j) - size(i))


@pytest.mark.parametrize("P", corpus.all_posets(5), ids=lambda P: f"n{len(P)}")
def test_moebius_inverts_zeta(P):
    I = incidence_algebra(P)
    mu, zeta, delta = I.moebius(), I.zeta(), I.delta()
    assert I.multiply(mu, zeta) == delta == I.multiply(zeta, mu)
    assert I.multiply(delta, mu) == mu == I.multiply(mu, delta)


_algebras = [incidence_algebra(P) for P in corpus.all_posets(4) if len(P) >= 2]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(_algebras), st.data())
def test_incidence_product_associative(I, data):
    vec = st.lists(st.integers(-5, 5), min_size=I.rank, max_size=I.rank).map(tuple)
    f, g, h = data.draw(vec), data.draw(vec), data.draw(vec)
    assert I.multiply(I.multiply(f, g), h) == I.multiply(f, I.multiply(g, h))
