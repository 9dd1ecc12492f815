"""The module of motives M(D) of a finite distributive lattice.

M(D) is presented on the nonzero elements of D modulo
``[U] + [V] = [U ∨ V] + [U ∧ V]`` (one row per incomparable pair), and is
free.  The canonical basis is indexed by the points (join-irreducibles) p of
D: ``b_p = [↓p] - [↓p minus p]``.  Coordinates on that basis are computed by
the point-indicator map ``[U] -> 1_{points in U}``, which is checked to be an
isomorphism against the Smith normal form of the presentation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (IllDefinedProduct, NotAValuation, NotIso, NotUnimodular,
                     SplitFailure, TorsionFound, VerificationError)
from .intmat import det, hstack, identity, matmul
from .lattice import (FinDistLattice, LatticeHom, add_top, booleanize,
                      require_hom)
from .snf import AbGroup, FPAbGroup, SNFResult


def motives_presentation(D: FinDistLattice) -> FPAbGroup:
    """Generators are the nonzero elements in canonical order (generator ``j`` is
    lattice element ``j + 1``); one relation per incomparable pair."""
    n = len(D) - 1
    rows = []
    for u in range(1, len(D)):
        for v in range(u + 1, len(D)):
            if D.leq(u, v) or D.leq(v, u):
                continue
            row = [0] * n
            for w, c in ((u, 1), (v, 1), (D.join(u, v), -1), (D.meet(u, v), -1)):
                if w:
                    row[w - 1] += c
            rows.append(tuple(row))
    return FPAbGroup(n, tuple(rows))


def _indicator(D: FinDistLattice, u: int) -> tuple:
    m = D.masks[u]
    return tuple(m >> p & 1 for p in range(len(D.irr)))


def _indicator_of(D: FinDistLattice, vec) -> tuple:
    """Point-indicator image of a vector in generator coordinates."""
    out = [0] * len(D.irr)
    for j, c in enumerate(vec):
        if c:
            m = D.masks[j + 1]
            for p in range(len(D.irr)):
                if m >> p & 1:
                    out[p] += c
    return tuple(out)


@dataclass(frozen=True)
class PointBasisIso:
    generator_images: dict   # lattice label -> indicator vector
    snf_matrix: list         # row j: indicator image of the j-th SNF basis vector
    determinant: int

    @property
    def unimodular(self) -> bool:
        return abs(self.determinant) == 1


def _point_basis_iso(D, pres: FPAbGroup, snf: SNFResult) -> PointBasisIso:
    for row in pres.relations:
        if any(_indicator_of(D, row)):
            raise VerificationError("indicator map does not kill relation", list(row))
    k = snf.rank
    snf_basis = snf.right_inv[k:] if snf.right_inv is not None else []
    T = [list(_indicator_of(D, w)) for w in snf_basis]
    square = len(T) == len(D.irr)
    d = det(T) if square else 0
    images = {D.labels[u]: _indicator(D, u) for u in range(1, len(D))}
    return PointBasisIso(images, T, d)


class MotiveModule:
    """M(D) with its point basis, universal valuation and product table.

    Vectors in *generator coordinates* have one entry per nonzero element of
    D; vectors in *basis coordinates* have one entry per point.
    """

    def __init__(self, D: FinDistLattice):
        self.lattice = D
        self.generators = tuple(range(1, len(D)))
        self.presentation = motives_presentation(D)
        self.snf = self.presentation.snf(left=False, right=True)
        if self.snf.torsion:
            raise TorsionFound(f"SNF diagonal has entries > 1: {self.snf.torsion}",
                               list(self.snf.diag))
        self.rank = self.presentation.generator_count - self.snf.rank
        self.iso = _point_basis_iso(D, self.presentation, self.snf)
        if not self.iso.unimodular:
            raise NotUnimodular(
                f"indicator map is not unimodular (rank {self.rank}, "
                f"{len(D.irr)} points, det {self.iso.determinant})",
                self.iso.snf_matrix)
        npts = len(D.irr)
        self.basis_elements = tuple((D.principal(p), D.lower_cover_of_point(p))
                                    for p in range(npts))
        basis = []
        for top, low in self.basis_elements:
            v = [0] * len(self.generators)
            v[top - 1] += 1
            if low:
                v[low - 1] -= 1
            basis.append(tuple(v))
        self.basis = tuple(basis)
        for p, b in enumerate(self.basis):
            if self.express(b) != tuple(int(q == p) for q in range(npts)):
                raise VerificationError("point basis vector has wrong coordinates", p)
        self.mu_univ = tuple(_indicator(D, u) for u in range(len(D)))
        self.ring_table = self._product_table()

    def express(self, vec) -> tuple:
        """Basis coordinates of a vector given in generator coordinates."""
        return _indicator_of(self.lattice, vec)

    def generator_vector(self, u: int) -> tuple:
        v = [0] * len(self.generators)
        if u:
            v[u - 1] = 1
        return tuple(v)

    def mu(self, x) -> tuple:
        return self.mu_univ[self.lattice.idx(x)]

    def multiply_generators(self, x, y) -> tuple:
        """Product of two generator-coordinate vectors via [U]·[V] = [U ∧ V]."""
        D = self.lattice
        out = [0] * len(self.generators)
        for a, ca in enumerate(x):
            if not ca:
                continue
            for b, cb in enumerate(y):
                if cb:
                    w = D.meet(a + 1, b + 1)
                    if w:
                        out[w - 1] += ca * cb
        return tuple(out)

    def _product_table(self):
        return [[self.express(self.multiply_generators(bp, bq)) for bq in self.basis]
                for bp in self.basis]

    def multiply(self, x, y) -> tuple:
        """Product of two basis-coordinate vectors using the ring table."""
        out = [0] * self.rank
        for p, cp in enumerate(x):
            if not cp:
                continue
            for q, cq in enumerate(y):
                if cq:
                    for r, c in enumerate(self.ring_table[p][q]):
                        out[r] += cp * cq * c
        return tuple(out)

    def basis_combinations(self) -> list:
        D = self.lattice
        out = []
        for top, low in self.basis_elements:
            terms = [[1, D.labels[top]]]
            if low:
                terms.append([-1, D.labels[low]])
            out.append(terms)
        return out

    def to_json(self) -> dict:
        D = self.lattice
        return {
            "rank": self.rank,
            "basis": [D.labels[top] for top, _ in self.basis_elements],
            "basisCombinations": self.basis_combinations(),
            "muUniv": {D.labels[u]: list(self.mu_univ[u]) for u in range(len(D))},
            "ringTable": [[list(c) for c in row] for row in self.ring_table],
            "snfDiag": list(self.snf.diag),
        }

    def __repr__(self):
        return f"MotiveModule(rank={self.rank}, |D|={len(self.lattice)})"


@lru_cache(maxsize=1024)
def motive_module(D: FinDistLattice) -> MotiveModule:
    return MotiveModule(D)


@dataclass(frozen=True)
class FreenessReport:
    free: bool
    rank: int
    diag: tuple


def certify_free(M: MotiveModule) -> FreenessReport:
    diag = M.snf.diag
    if any(d > 1 for d in diag):
        raise TorsionFound(f"torsion in M(D): {[d for d in diag if d > 1]}", list(diag))
    return FreenessReport(True, M.rank, diag)


def point_basis_iso(D: FinDistLattice, M: MotiveModule = None) -> PointBasisIso:
    """Indicator map ``[U] -> 1_U`` on the raw SNF basis of M(D); must be unimodular."""
    M = M or motive_module(D)
    iso = _point_basis_iso(D, M.presentation, M.snf)
    if not iso.unimodular:
        raise NotUnimodular(f"determinant {iso.determinant}", iso.snf_matrix)
    return iso


def motive_hom(f: LatticeHom) -> list:
    """Matrix of M(f) on the point bases (rows: target points, columns: source points)."""
    require_hom(f)
    S, T = f.source, f.target
    MT = motive_module(T)
    cols = []
    for p in range(len(S.irr)):
        hi = MT.mu_univ[f(S.principal(p))]
        lo = MT.mu_univ[f(S.lower_cover_of_point(p))]
        cols.append([a - b for a, b in zip(hi, lo)])
    return [[cols[c][r] for c in range(len(cols))] for r in range(len(T.irr))]


@dataclass(frozen=True)
class SplitReport:
    rank: int
    rank_with_top: int
    inclusion: list
    retraction: list
    section: list
    ok: bool


def split_top(D: FinDistLattice) -> SplitReport:
    """Check ``M(D∞) = M(D) ⊕ Z`` through ``D -> D∞ -> 2`` and ``2 -> D∞``."""
    adj = add_top(D)
    i = motive_hom(adj.inclusion)
    r = motive_hom(adj.retraction)
    s = motive_hom(adj.section)
    n, ninf = motive_module(D).rank, motive_module(adj.lattice).rank
    problems = []
    if ninf != n + 1:
        problems.append(f"rank {ninf} != {n} + 1")
    if matmul(r, s) != [[1]]:
        problems.append("retraction ∘ section != id")
    if n and matmul(r, i) != [[0] * n]:
        problems.append("retraction ∘ inclusion != 0")
    both = hstack(i, s)
    if abs(det(both)) != 1:
        problems.append("[inclusion | section] is not unimodular")
    if problems:
        raise SplitFailure("; ".join(problems), problems)
    return SplitReport(n, ninf, i, r, s, True)


@dataclass(frozen=True)
class BooleanizationReport:
    rank: int
    matrix: list
    determinant: int


def booleanization_iso(D: FinDistLattice) -> BooleanizationReport:
    B, h = booleanize(D)
    A = motive_hom(h)
    d = det(A) if len(A) == len(A[0] if A else []) else 0
    if abs(d) != 1:
        raise NotIso(f"M(D) -> M(Bool(D)) has determinant {d}", A)
    return BooleanizationReport(motive_module(D).rank, A, d)


@dataclass(frozen=True)
class ValuationData:
    target: AbGroup
    values: tuple  # coordinate vector per lattice index

    @classmethod
    def from_map(cls, D: FinDistLattice, target: AbGroup, values: dict) -> "ValuationData":
        vals = [target.zero()] * len(D)
        seen = set()
        for x, v in values.items():
            u = D.idx(x)
            vals[u] = target.reduce(v)
            seen.add(u)
        missing = [D.labels[u] for u in range(1, len(D)) if u not in seen]
        if missing:
            raise NotAValuation(f"no value given for {missing}", missing)
        return cls(target, tuple(vals))


def is_valuation(D: FinDistLattice, v: ValuationData) -> bool:
    A = v.target
    vals = [A.reduce(x) for x in v.values]
    if len(vals) != len(D) or any(vals[D.bottom]):
        return False
    moduli = (0,) * A.rank + A.torsion
    for a in range(len(D)):
        for b in range(a + 1, len(D)):
            # comparable pairs satisfy modularity trivially
            if D.leq(a, b) or D.leq(b, a):
                continue
            j, m = D.join(a, b), D.meet(a, b)
            for k, d in enumerate(moduli):
                diff = vals[a][k] + vals[b][k] - vals[j][k] - vals[m][k]
                if (diff % d if d else diff):
                    return False
    return True


@dataclass(frozen=True)
class Factorization:
    target: AbGroup
    matrix: list   # target coordinates x M(D) basis
    unique: bool

    def apply(self, x) -> tuple:
        out = [sum(row[p] * c for p, c in enumerate(x)) for row in self.matrix]
        return self.target.reduce(out)


def factor_valuation(M: MotiveModule, v: ValuationData) -> Factorization:
    """The unique homomorphism ``h: M(D) -> A`` with ``h ∘ mu_univ = v``."""
    D = M.lattice
    if not is_valuation(D, v):
        raise NotAValuation("input is not a valuation")
    A = v.target
    cols = [A.add(v.values[top], A.scale(-1, v.values[low]))
            for top, low in M.basis_elements]
    matrix = [[cols[p][r] for p in range(M.rank)] for r in range(A.ngens)]
    h = Factorization(A, matrix, True)
    for u in range(len(D)):
        if h.apply(M.mu_univ[u]) != A.reduce(v.values[u]):
            raise VerificationError("factored hom does not reproduce the valuation",
                                    D.labels[u])
    # every basis vector is mu(↓p) - mu(↓p minus p), so h is forced on the basis
    for p, (top, low) in enumerate(M.basis_elements):
        e = tuple(a - b for a, b in zip(M.mu_univ[top], M.mu_univ[low]))
        if e != tuple(int(q == p) for q in range(M.rank)):
            raise VerificationError("basis vector not in the span of mu_univ", p)
    return h


@dataclass(frozen=True)
class RingReport:
    table: list
    well_defined: bool
    commutative: bool
    associative: bool
    idempotents: bool
    unit: bool  # None when the lattice view has no top

    @property
    def ok(self) -> bool:
        return (self.well_defined and self.commutative and self.associative
                and self.idempotents and self.unit is not False)


def ring_structure(M: MotiveModule) -> RingReport:
    """Verify the product ``[U]·[V] = [U ∧ V]`` on M(D)."""
    D, n = M.lattice, M.rank
    well_defined = True
    for row in M.presentation.relations:
        for g in range(len(M.generators)):
            if any(M.express(M.multiply_generators(row, M.generator_vector(g + 1)))):
                well_defined = False
                break
        if not well_defined:
            break
    e = identity(n)
    T = M.ring_table
    commutative = all(T[p][q] == T[q][p] for p in range(n) for q in range(n))
    associative = all(M.multiply(e[p], T[q][r]) == M.multiply(T[p][q], e[r])
                      for p in range(n) for q in range(n) for r in range(n))
    idempotents = all(M.multiply(m, m) == m for m in M.mu_univ)
    unit = None
    if D.has_top:
        one = M.mu_univ[D.top]
        unit = all(M.multiply(one, tuple(x)) == tuple(x) and M.multiply(tuple(x), one) == tuple(x)
                   for x in e)
    rep = RingReport(T, well_defined, commutative, associative, idempotents, unit)
    if not rep.ok:
        raise IllDefinedProduct("product table fails a ring law", {
            "well_defined": well_defined, "commutative": commutative,
            "associative": associative, "idempotents": idempotents, "unit": unit})
    return rep
