import pytest

from finstone.lattice import from_tables, two
from finstone.order import chain, validate_poset
from finstone.lattice import birkhoff_opens

DIAMOND_ELEMENTS = ["0", "U", "V", "1"]


def _diamond_tables():
    def j(a, b):
        if a == b or b == "0":
            return a
        if a == "0":
            return b
        return "1"

    def m(a, b):
        if a == b or b == "1":
            return a
        if a == "1":
            return b
        return "0"
    E = DIAMOND_ELEMENTS
    return E, [[j(a, b) for b in E] for a in E], [[m(a, b) for b in E] for a in E]


def m3_tables():
    """The diamond M3 with three incomparable atoms: modular, not distributive."""
    E = ["0", "a", "b", "c", "1"]

    def j(x, y):
        if x == y or y == "0":
            return x
        if x == "0":
            return y
        return "1"

    def m(x, y):
        if x == y or y == "1":
            return x
        if x == "1":
            return y
        return "0"
    return E, [[j(a, b) for b in E] for a in E], [[m(a, b) for b in E] for a in E]


@pytest.fixture
def diamond_tables():
    return _diamond_tables()


@pytest.fixture
def diamond():
    E, J, M = _diamond_tables()
    D, _ = from_tables(E, J, M, "0", "1")
    return D


@pytest.fixture
def chain3():
    """The 3-element chain 0 < a < 1, as the opens of a 2-chain."""
    return birkhoff_opens(chain(2))


@pytest.fixture
def two_lattice():
    return two()


@pytest.fixture
def antichain_plus_point():
    """Two incomparable points and a third point above one of them."""
    return validate_poset(["p", "q", "r"], [("p", "r")])
