"""Rectilinear grid polytopes and their polytope modules.

A grid is given by exact rational cut coordinates per axis; polytopes are
unions of grid cells.  Two polytopes meet in measure zero exactly when their
cell sets are disjoint, so union and intersection of cell sets realize the
lattice of polytopes (join = union, meet = intersection up to measure zero).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Sequence

from .errors import TooLarge, ValidationError
from .lattice import FinDistLattice, from_set_family, set_label
from .motives import MotiveModule, motive_module
from .order import bits

MAX_GRID_CELLS = 16


@dataclass(frozen=True)
class GridGeometry:
    dimension: int
    cuts: tuple  # per axis, strictly increasing Fractions

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise ValidationError(f"dimension must be 1 or 2, got {self.dimension}")
        if len(self.cuts) != self.dimension:
            raise ValidationError(f"expected {self.dimension} cut lists, got {len(self.cuts)}")
        cuts = tuple(tuple(Fraction(c) for c in axis) for axis in self.cuts)
        for k, axis in enumerate(cuts):
            if len(axis) < 2:
                raise ValidationError(f"axis {k} needs at least two cuts", k)
            if any(b <= a for a, b in zip(axis, axis[1:])):
                raise ValidationError(f"cuts on axis {k} are not strictly increasing", k)
        object.__setattr__(self, "cuts", cuts)

    @cached_property
    def cells(self) -> tuple:
        """Cells as tuples of interval indices, in lexicographic order."""
        return tuple(product(*(range(len(axis) - 1) for axis in self.cuts)))

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    def cell_name(self, k: int) -> str:
        return f"c{k + 1}"

    def cell_volume(self, k: int) -> Fraction:
        vol = Fraction(1)
        for axis, i in zip(self.cuts, self.cells[k]):
            vol *= axis[i + 1] - axis[i]
        return vol

    def cell_bounds(self, k: int) -> list:
        return [(axis[i], axis[i + 1]) for axis, i in zip(self.cuts, self.cells[k])]

    def box(self, lo: Sequence, hi: Sequence) -> "GridPolytope":
        """All cells inside the axis-parallel box ``[lo, hi]``."""
        lo = [Fraction(x) for x in lo]
        hi = [Fraction(x) for x in hi]
        mask = 0
        for k in range(self.cell_count):
            if all(l <= a and b <= h for (a, b), l, h in zip(self.cell_bounds(k), lo, hi)):
                mask |= 1 << k
        return GridPolytope(self, mask)

    def polytope(self, cells: Sequence[int]) -> "GridPolytope":
        mask = 0
        for c in cells:
            if not 0 <= c < self.cell_count:
                raise ValidationError(f"cell index {c} out of range", c)
            mask |= 1 << c
        return GridPolytope(self, mask)


@dataclass(frozen=True)
class GridPolytope:
    geometry: GridGeometry
    mask: int

    def __or__(self, other):
        return GridPolytope(self.geometry, self.mask | other.mask)

    def __and__(self, other):
        return GridPolytope(self.geometry, self.mask & other.mask)

    @property
    def cells(self) -> list:
        return list(bits(self.mask))

    def measure(self) -> Fraction:
        return sum((self.geometry.cell_volume(k) for k in bits(self.mask)), Fraction(0))

    @property
    def label(self) -> str:
        return set_label(self.geometry.cell_name(k) for k in bits(self.mask))


def overlap_measure(P: GridPolytope, Q: GridPolytope) -> Fraction:
    return (P & Q).measure()


@dataclass(frozen=True)
class PolytopeLattice(FinDistLattice):
    """A finite lattice of grid polytopes; ``cells[i]`` is the cell bitset of element ``i``."""

    geometry: GridGeometry = None
    cells: tuple = ()

    def polytope(self, i: int) -> GridPolytope:
        return GridPolytope(self.geometry, self.cells[i])


def _wrap(g: GridGeometry, family: list, has_top: bool) -> PolytopeLattice:
    labels = [GridPolytope(g, m).label for m in family]
    D, renaming = from_set_family(family, labels, has_top=has_top)
    cells = [0] * len(D)
    for m, u in zip(family, renaming):
        cells[u] = m
    return PolytopeLattice(D.irr, D.masks, D.labels, D.has_top, g, tuple(cells))


def grid_lattice(g: GridGeometry, max_cells: int = MAX_GRID_CELLS) -> PolytopeLattice:
    """Boolean lattice of all cell sets."""
    if g.cell_count > max_cells:
        raise TooLarge(f"{g.cell_count} cells > {max_cells}; use generated_sublattice",
                       g.cell_count)
    return _wrap(g, list(range(1 << g.cell_count)), has_top=True)


def generated_sublattice(g: GridGeometry, gens: Sequence[GridPolytope]) -> PolytopeLattice:
    """Closure of ``gens`` and the empty polytope under union and intersection.

    The result is a finite stage of the (lower bounded) polytope lattice, so
    its top is not part of the structure.
    """
    family = {0} | {p.mask for p in gens}
    frontier = set(family)
    while frontier:
        new = set()
        for a in frontier:
            for b in family:
                for c in (a | b, a & b):
                    if c not in family:
                        new.add(c)
        family |= new
        frontier = new
    return _wrap(g, sorted(family), has_top=False)


@dataclass(frozen=True)
class PolytopeReport:
    rank: int
    wedge_summands: int
    basis: list   # signed cell-set combinations

    def to_json(self) -> dict:
        return {"rank": self.rank, "wedgeSummands": self.wedge_summands,
                "basis": self.basis}


def polytope_module(D: FinDistLattice):
    """``M(D)`` for a polytope lattice; its rank counts the sphere summands of
    the non-equivariant scissors K-theory at this stage."""
    M = motive_module(D)
    return M, PolytopeReport(M.rank, M.rank, M.basis_combinations())


def scissors_relation(M: MotiveModule, P: int, Q: int) -> bool:
    """``[P ∪ Q] = [P] + [Q]`` in M for lattice elements meeting in measure zero."""
    D = M.lattice
    if D.meet(P, Q) != D.bottom:
        raise ValidationError("polytopes overlap in positive measure", [D.labels[P], D.labels[Q]])
    lhs = M.mu_univ[D.join(P, Q)]
    rhs = tuple(a + b for a, b in zip(M.mu_univ[P], M.mu_univ[Q]))
    return lhs == rhs

