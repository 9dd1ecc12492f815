"""Smith normal form and finitely generated abelian groups."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .intmat import identity


@dataclass(frozen=True)
class SNFResult:
    """``left @ m @ right`` is diagonal with entries ``diag``.

    ``right_inv`` is the inverse of ``right``.  Transforms are ``None`` when
    they were not requested.
    """

    diag: tuple
    left: list = None
    right: list = None
    right_inv: list = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self.diag if d > 1)


def smith_normal_form(m, ncols=None, left=True, right=True) -> SNFResult:
    """Smith normal form over the integers.

    Pivot rule: the nonzero entry of least absolute value in the remaining
    block (first in row-major order on ties), so the pivot sequence and the
    transforms are deterministic.  ``ncols`` is only needed for a matrix with
    no rows.
    """
    A = [[int(x) for x in row] for row in m]
    nr = len(A)
    nc = len(A[0]) if nr else (ncols or 0)
    U = identity(nr) if left else None
    V = identity(nc) if right else None
    Vi = identity(nc) if right else None

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        if U is not None:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        if V is not None:
            for row in V:
                row[j], row[k] = row[k], row[j]
            Vi[j], Vi[k] = Vi[k], Vi[j]

    def add_row(i, k, q, nz=None):
        # row i += q * row k; ``nz`` lists the nonzero (column, entry) pairs of row k
        ri = A[i]
        for j, x in nz if nz is not None else ((j, x) for j, x in enumerate(A[k]) if x):
            ri[j] += q * x
        if U is not None:
            ui, uk = U[i], U[k]
            for j in range(nr):
                if uk[j]:
                    ui[j] += q * uk[j]

    def add_col(j, k, q):
        # col j += q * col k
        for row in A:
            if row[k]:
                row[j] += q * row[k]
        if V is not None:
            for row in V:
                if row[k]:
                    row[j] += q * row[k]
            vk, vj = Vi[k], Vi[j]
            for c in range(nc):
                if vj[c]:
                    vk[c] -= q * vj[c]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            row = A[i]
            for j in range(t, nc):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            nz = [(j, x) for j, x in enumerate(A[t]) if x]
            for i in range(t + 1, nr):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p), nz)
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, nc):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                cands = [(abs(A[i][t]), 0, i) for i in range(t + 1, nr) if A[i][t]]
                cands += [(abs(A[t][j]), 1, j) for j in range(t + 1, nc) if A[t][j]]
                _, kind, k = min(cands)
                if kind == 0:
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            if abs(p) != 1:
                bad = next((i for i in range(t + 1, nr)
                            if any(A[i][j] % p for j in range(t + 1, nc))), None)
                if bad is not None:
                    add_row(t, bad, 1)
                    continue
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1
    diag = tuple(A[i][i] for i in range(min(nr, nc)))
    return SNFResult(diag, U, V, Vi)


@dataclass(frozen=True)
class AbGroup:
    """``Z^rank ⊕ Z/torsion[0] ⊕ ...`` in invariant-factor form (each divides the next)."""

    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        if self.rank < 0 or any(d < 2 for d in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"not in invariant-factor form: rank={self.rank}, torsion={t}")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_cyclic(cls, orders) -> "AbGroup":
        """Direct sum of cyclic groups; order 0 means Z, order 1 is dropped."""
        orders = [abs(int(o)) for o in orders]
        free = orders.count(0)
        finite = [o for o in orders if o > 1]
        return cls(free, invariant_factors(finite))

    def __add__(self, other: "AbGroup") -> "AbGroup":
        return AbGroup.from_cyclic([0] * (self.rank + other.rank)
                                   + list(self.torsion) + list(other.torsion))

    def power(self, n: int) -> "AbGroup":
        """Direct sum of ``n`` copies, i.e. ``Z^n ⊗ self``."""
        return AbGroup.from_cyclic(([0] * self.rank + list(self.torsion)) * n)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    def reduce(self, v) -> tuple:
        """Normal form of a coordinate vector (torsion coordinates taken mod d)."""
        v = tuple(map(int, v))
        r, t = self.rank, self.torsion
        if len(v) != r + len(t):
            raise ValueError(f"expected {r + len(t)} coordinates, got {len(v)}")
        if not t:
            return v
        return v[:r] + tuple(x % d for x, d in zip(v[r:], t))

    def zero(self) -> tuple:
        return (0,) * self.ngens

    def add(self, a, b) -> tuple:
        return self.reduce([x + y for x, y in zip(a, b)])

    def scale(self, k, a) -> tuple:
        return self.reduce([k * x for x in a])

    def to_json(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def invariant_factors(orders) -> tuple:
    """Invariant factors of ``⊕ Z/orders[i]`` (all orders >= 2)."""
    if not orders:
        return ()
    diag = smith_normal_form([[o if i == j else 0 for j in range(len(orders))]
                              for i, o in enumerate(orders)], left=False, right=False).diag
    return tuple(d for d in diag if d > 1)


@dataclass(frozen=True)
class FPAbGroup:
    """Abelian group on ``generator_count`` generators modulo the rows of ``relations``."""

    generator_count: int
    relations: tuple

    def snf(self, left=False, right=True) -> SNFResult:
        return smith_normal_form(self.relations, ncols=self.generator_count,
                                 left=left, right=right)

    def structure(self) -> AbGroup:
        d = self.snf(right=False)
        return AbGroup(self.generator_count - d.rank, d.torsion)


def lcm(a, b):
    return a * b // gcd(a, b) if a and b else 0
