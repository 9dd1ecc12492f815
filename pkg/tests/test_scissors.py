from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from finstone.errors import TooLarge, ValidationError
from finstone.motives import motive_module, ring_structure
from finstone.scissors import (GridGeometry, generated_sublattice, grid_lattice, overlap_measure,
                               polytope_module, scissors_relation)

F = Fraction


def line(*cuts):
    return GridGeometry(1, (tuple(F(c) for c in cuts),))


def test_one_dim_grids():
    D = grid_lattice(line(0, 1, 2))
    assert len(D) == 4 and len(D.irr) == 2 and D.is_boolean
    assert len(grid_lattice(line(0, 1))) == 2


def test_two_dim_grid():
    g = GridGeometry(2, ((0, 1, 2), (0, 1)))
    assert g.cell_count == 2
    assert g.cell_bounds(1) == [(1, 2), (0, 1)]
    assert g.box([0, 0], [2, 1]).cells == [0, 1]
    assert g.box([0, 0], [1, 1]).measure() == 1


def test_overlapping_intervals():
    g = line(0, F(1, 2), 1, F(3, 2))
    a, b = g.polytope([0, 1]), g.polytope([1, 2])
    assert overlap_measure(a, b) == F(1, 2)
    D = generated_sublattice(g, [a, b])
    assert len(D) == 5 and not D.has_top
    M, rep = polytope_module(D)
    assert rep.rank == 3
    assert rep.basis == [[[1, "{c2}"]], [[1, "{c1,c2}"], [-1, "{c2}"]],
                         [[1, "{c2,c3}"], [-1, "{c2}"]]]


def test_disjoint_generators():
    g = line(0, 1, 2, 3)
    D = generated_sublattice(g, [g.polytope([0]), g.polytope([2])])
    assert len(D) == 4
    M = motive_module(D)
    P, Q = D.idx("{c1}"), D.idx("{c3}")
    assert scissors_relation(M, P, Q)


def test_scissors_relation_rejects_overlap():
    g = line(0, 1, 2, 3)
    D = generated_sublattice(g, [g.polytope([0, 1]), g.polytope([1, 2])])
    M = motive_module(D)
    with pytest.raises(ValidationError):
        scissors_relation(M, D.idx("{c1,c2}"), D.idx("{c2,c3}"))


def test_full_grid_rank():
    M, rep = polytope_module(grid_lattice(line(0, 1, 2, 3)))
    assert rep.rank == 3 and rep.wedge_summands == 3
    assert ring_structure(M).ok


def test_limits_and_validation():
    with pytest.raises(TooLarge):
        grid_lattice(line(*range(18)))
    with pytest.raises(ValidationError):
        line(0, 0)
    with pytest.raises(ValidationError):
        line(0)
    with pytest.raises(ValidationError):
        GridGeometry(3, ((0, 1),) * 3)
    with pytest.raises(ValidationError):
        line(0, 1).polytope([5])


cuts = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7),
                min_size=2, max_size=6, unique=True).map(sorted)


@settings(max_examples=80, deadline=None)
@given(cuts, st.lists(st.integers(0, 31), min_size=1, max_size=4))
def test_generated_lattice_laws(cs, masks):
    g = GridGeometry(1, (tuple(cs),))
    full = (1 << g.cell_count) - 1
    gens = [g.polytope([k for k in range(g.cell_count) if m & full >> k & 1 and m >> k & 1])
            for m in masks]
    D = generated_sublattice(g, gens)
    fam = set(D.cells)
    assert all(a | b in fam and a & b in fam for a in fam for b in fam)
    M, rep = polytope_module(D)
    # rank equals the number of join-irreducible polytopes
    assert rep.rank == len(D.irr)
    for u in range(len(D)):
        for v in range(len(D)):
            if D.meet(u, v) == D.bottom:
                assert scissors_relation(M, u, v)
            # measure is a valuation
            m = lambda w: D.polytope(w).measure()
            assert m(u) + m(v) == m(D.join(u, v)) + m(D.meet(u, v))
