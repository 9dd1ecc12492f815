import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from finstone.corpus import random_system
from finstone.errors import NotBounded, NotSurjective, TooLarge, UnknownElement, ValidationError
from finstone.lattice import birkhoff_opens
from finstone.order import chain
from finstone.profinite import (ColimElement, colimit_boolean, constant_system, constructible_stage,
                                continuous_functions, finite_partitions, motives_vs_continuous,
                                refines, set_partitions, validate_system)
from finstone.snf import AbGroup


@pytest.fixture
def merge():
    """X0 = {1, 2} <- X1 = {1, 2, 3, 4} with 1, 2 -> 1 and 3, 4 -> 2."""
    return validate_system([["1", "2"], ["1", "2", "3", "4"]],
                           [{"1": "1", "2": "1", "3": "2", "4": "2"}])


def test_validation():
    with pytest.raises(NotSurjective):
        validate_system([["a", "b"], ["x"]], [{"x": "a"}])
    with pytest.raises(UnknownElement):
        validate_system([["a"], ["x"]], [{"x": "zz"}])
    with pytest.raises(ValidationError):
        validate_system([["a"], ["x", "y"]], [{"x": "a"}])
    with pytest.raises(ValidationError):
        validate_system([], [])
    with pytest.raises(ValidationError):
        validate_system([["a", "a"]], [])


def test_constant_system_normalizes_to_stage_zero():
    sys_ = constant_system(["a", "b", "c"], depth=2)
    B = colimit_boolean(sys_)
    e = B.element(2, ["a", "c"])
    assert e == ColimElement(0, 0b101)


def test_merge_normal_forms(merge):
    B = colimit_boolean(merge)
    assert B.element(1, ["3", "4"]) == ColimElement(0, 0b10)
    assert B.members(B.element(1, ["3", "4"])) == ["2"]
    assert B.element(1, ["3"]) == ColimElement(1, 0b0100)


def test_merge_boolean_laws(merge):
    B = colimit_boolean(merge)
    a, b = B.element(1, ["1", "3"]), B.element(0, ["1"])
    assert B.equal(B.join(a, b), B.element(1, ["1", "2", "3"]))
    assert B.equal(B.meet(a, b), B.element(1, ["1"]))
    assert B.equal(B.complement(B.complement(a)), a)
    assert B.equal(B.join(a, B.complement(a)), B.top())


def test_functions(merge):
    C = continuous_functions(merge)
    assert str(C.group_at(0)) == "Z^2" and str(C.group_at(1)) == "Z^4"
    f = C.element(1, [5, 5, 7, 7])
    assert f == ColimElement(0, ((5,), (7,)))
    g = C.element(1, [1, 2, 0, 0])
    assert C.add(f, C.neg(f)) == C.zero()
    assert C.add(f, g).stage == 1


def test_functions_into_trivial_group(merge):
    C = continuous_functions(merge, AbGroup())
    assert C.group_at(1).is_trivial


def test_motives_vs_continuous(merge):
    rep = motives_vs_continuous(merge)
    assert rep.motive_ranks == rep.function_ranks == (2, 4)
    assert rep.ok
    assert motives_vs_continuous(constant_system(["a", "b", "c"])).motive_ranks == (3,)
    assert motives_vs_continuous(constant_system(["a"], depth=3)).function_ranks == (1,) * 4


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_systems(seed):
    rng = random.Random(seed)
    sys_ = random_system(rng)
    assert motives_vs_continuous(sys_).ok
    B = colimit_boolean(sys_)
    k = sys_.depth
    a = B.normalize(ColimElement(k, rng.getrandbits(sys_.size(k))))
    b = B.normalize(ColimElement(k, rng.getrandbits(sys_.size(k))))
    # normal form is idempotent and De Morgan holds
    assert B.normalize(a) == a
    assert B.equal(B.complement(B.join(a, b)), B.meet(B.complement(a), B.complement(b)))


@pytest.mark.parametrize("n", range(6))
def test_partitions_bell(n):
    rep = finite_partitions([f"x{k}" for k in range(n)])
    assert len(rep.partitions) == oracles.bell(n)
    assert rep.ok and rep.beta_points == n


def test_two_point_partitions():
    rep = finite_partitions(["a", "b"])
    assert rep.beta_points == 2
    assert rep.refinement_pairs == 1


def test_partition_size_limit():
    with pytest.raises(TooLarge):
        finite_partitions(range(9))


def test_refines():
    parts = set_partitions("abc")
    fine, coarse = (("a",), ("b",), ("c",)), (("a", "b", "c"),)
    assert fine in parts and coarse in parts
    assert refines(fine, coarse) and not refines(coarse, fine)


def test_constructible_stage(chain3, diamond):
    assert constructible_stage(chain3).system.size(0) == 2
    assert constructible_stage(diamond).system.size(0) == 2
    assert len(constructible_stage(birkhoff_opens(chain(3))).boolean) == 8
    with pytest.raises(NotBounded):
        constructible_stage(diamond.as_lower_bounded())
