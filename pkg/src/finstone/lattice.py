"""Finite distributive lattices in Birkhoff form.

A :class:`FinDistLattice` is the lattice of *all* downsets of its poset of
join-irreducibles ``irr``.  Element ``i`` is the downset ``masks[i]`` (masks
sorted ascending, so the bottom is index 0 and the top is the last index);
join and meet are bitwise or/and.  ``labels`` are display names only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import order
from .errors import (BottomViolation, NotAHom, NotBounded, NotDistributive,
                     NotLattice, TooLarge, TopViolation, VerificationError)
from .order import Poset, bits, downset_masks, validate_poset

# generic join-irreducibility scan is quadratic in |D|; beyond this size the
# structural characterization (principal downsets of irr) is used instead
GENERIC_SCAN_LIMIT = 512
PRIME_FILTER_LIMIT = 256


def set_label(names) -> str:
    return "{" + ",".join(str(n) for n in names) + "}"


@dataclass(frozen=True)
class FinDistLattice:
    irr: Poset
    masks: tuple
    labels: tuple
    has_top: bool = True

    def __len__(self):
        return len(self.masks)

    @cached_property
    def position(self) -> dict:
        return {m: i for i, m in enumerate(self.masks)}

    @cached_property
    def label_index(self) -> dict:
        return {l: i for i, l in enumerate(self.labels)}

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.masks) - 1

    def idx(self, x) -> int:
        """Index of an element given by label or by index."""
        if isinstance(x, int) and not isinstance(x, bool) and x not in self.label_index:
            if 0 <= x < len(self):
                return x
        try:
            return self.label_index[x]
        except KeyError:
            from .errors import UnknownElement
            raise UnknownElement(f"unknown lattice element {x!r}", repr(x)) from None

    def join(self, i: int, j: int) -> int:
        return self.position[self.masks[i] | self.masks[j]]

    def meet(self, i: int, j: int) -> int:
        return self.position[self.masks[i] & self.masks[j]]

    def leq(self, i: int, j: int) -> bool:
        return self.masks[i] & ~self.masks[j] == 0

    def principal(self, k: int) -> int:
        """Lattice index of the downset generated by irreducible ``k``."""
        return self.position[self.irr.below[k]]

    def lower_cover_of_point(self, k: int) -> int:
        """Index of ``principal(k)`` with ``k`` itself removed."""
        return self.position[self.irr.strictly_below(k)]

    def points_in(self, i: int) -> list:
        """Irreducible indices contained in element ``i``."""
        return list(bits(self.masks[i]))

    @property
    def is_boolean(self) -> bool:
        return all(self.irr.strictly_below(k) == 0 for k in range(len(self.irr)))

    def complement(self, i: int):
        """Index of the complement of ``i``, or ``None`` if it has none."""
        m = self.irr.full & ~self.masks[i]
        return self.position.get(m)

    def as_lower_bounded(self) -> "FinDistLattice":
        return FinDistLattice(self.irr, self.masks, self.labels, has_top=False)

    def as_poset(self) -> Poset:
        """The underlying order of the lattice, named by labels."""
        below = []
        for m in self.masks:
            b = 0
            for j, mj in enumerate(self.masks):
                if mj & ~m == 0:
                    b |= 1 << j
            below.append(b)
        return Poset(tuple(self.labels), tuple(below))

    def __repr__(self):
        return f"FinDistLattice(|D|={len(self)}, points={list(self.irr.elements)})"


def lattice_from_irr(irr: Poset, labels: Sequence[str] = None, has_top: bool = True,
                     budget=None) -> FinDistLattice:
    masks = tuple(downset_masks(irr, budget))
    if labels is None:
        labels = tuple(set_label(irr.names(m)) for m in masks)
    elif len(labels) != len(masks):
        raise ValueError("label count does not match the number of downsets")
    return FinDistLattice(irr, masks, tuple(labels), has_top)


def birkhoff_opens(P: Poset, budget=None) -> FinDistLattice:
    """The lattice of all downsets (Alexandroff opens) of ``P``."""
    return lattice_from_irr(P, budget=budget)


def two() -> FinDistLattice:
    """The two-element lattice 0 < 1."""
    return lattice_from_irr(validate_poset(["pt"], []), labels=("0", "1"))


def trivial() -> FinDistLattice:
    """The one-element lattice {0}."""
    return lattice_from_irr(validate_poset([], []), labels=("0",))


def _irreducibles_by_scan(D: FinDistLattice) -> list:
    out = []
    for u, mu in enumerate(D.masks):
        smaller = [m for m in D.masks if m != mu and m & ~mu == 0]
        maximal = [m for m in smaller
                   if not any(o != m and m & ~o == 0 for o in smaller)]
        if len(maximal) == 1:
            out.append(u)
    return out


def join_irreducibles(D: FinDistLattice) -> list:
    """Lattice indices of the join-irreducible elements, in irr order.

    Uses the unique-lower-cover criterion on the lattice order and checks the
    result against the Birkhoff representation.
    """
    structural = [D.principal(k) for k in range(len(D.irr))]
    if len(D) <= GENERIC_SCAN_LIMIT:
        scanned = _irreducibles_by_scan(D)
        if sorted(scanned) != sorted(structural):
            raise VerificationError("join-irreducible scan disagrees with representation",
                                    [scanned, structural])
    return structural


def birkhoff_points(D: FinDistLattice) -> Poset:
    """Poset of join-irreducibles of ``D`` ordered as in ``D``, named by label."""
    irr_idx = join_irreducibles(D)
    names = [D.labels[u] for u in irr_idx]
    pairs = [(names[a], names[b]) for a, u in enumerate(irr_idx)
             for b, v in enumerate(irr_idx) if a != b and D.leq(u, v)]
    return validate_poset(names, pairs)


def from_set_family(family: Sequence[int], labels: Sequence[str] = None,
                    has_top: bool = True):
    """Lattice of a finite family of sets closed under union and intersection.

    ``family`` holds bitsets and must contain 0.  Returns the canonical lattice
    and a list mapping family position to lattice index.
    """
    family = list(family)
    if len(set(family)) != len(family):
        raise ValueError("family has repeated sets")
    fam = set(family)
    if 0 not in fam:
        raise BottomViolation("family must contain the empty set")
    for a in family:
        for b in family:
            if a | b not in fam or a & b not in fam:
                raise NotLattice("closure", [a, b])
    if labels is None:
        labels = [str(a) for a in family]
    covers = {}
    for a in family:
        smaller = [b for b in family if b != a and b & ~a == 0]
        covers[a] = [b for b in smaller if not any(c != b and b & ~c == 0 for c in smaller)]
    irr_sets = [a for a in family if len(covers[a]) == 1]
    pos = {a: i for i, a in enumerate(family)}
    names = [labels[pos[a]] for a in irr_sets]
    pairs = [(names[i], names[j]) for i, a in enumerate(irr_sets)
             for j, b in enumerate(irr_sets) if i != j and a & ~b == 0]
    irr = validate_poset(names, pairs)
    as_mask = {}
    for a in family:
        m = 0
        for k, s in enumerate(irr_sets):
            if s & ~a == 0:
                m |= 1 << k
        as_mask[a] = m
    masks = downset_masks(irr)
    if sorted(as_mask.values()) != masks:
        raise VerificationError("family is not distributive-isomorphic to downsets of its irreducibles")
    by_mask = {as_mask[a]: a for a in family}
    ordered_labels = tuple(labels[pos[by_mask[m]]] for m in masks)
    D = FinDistLattice(irr, tuple(masks), ordered_labels, has_top)
    renaming = [D.position[as_mask[a]] for a in family]
    return D, renaming


def from_tables(elements: Sequence, join, meet, bottom, top=None):
    """Validate a lattice given by operation tables and put it in Birkhoff form.

    ``join`` and ``meet`` are square tables of element names aligned with
    ``elements``.  Returns ``(lattice, renaming)`` where ``renaming`` maps each
    input name to its canonical index.  ``top=None`` gives the lower-bounded
    view.
    """
    elements = list(elements)
    n = len(elements)
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != n:
        raise NotLattice("distinct elements", elements)

    def table(t, name):
        if len(t) != n or any(len(row) != n for row in t):
            raise NotLattice(f"{name} table is not {n}x{n}", None)
        out = []
        for a, row in enumerate(t):
            r = []
            for b, x in enumerate(row):
                if x not in index:
                    raise NotLattice(f"{name} table total", [elements[a], elements[b], x])
                r.append(index[x])
            out.append(r)
        return out

    J, M = table(join, "join"), table(meet, "meet")
    if bottom not in index:
        raise BottomViolation(f"bottom {bottom!r} is not an element", repr(bottom))
    if top is not None and top not in index:
        raise TopViolation(f"top {top!r} is not an element", repr(top))
    E = elements
    for a in range(n):
        if J[a][a] != a or M[a][a] != a:
            raise NotLattice("idempotence", [E[a]])
        for b in range(n):
            if J[a][b] != J[b][a]:
                raise NotLattice("join commutativity", [E[a], E[b]])
            if M[a][b] != M[b][a]:
                raise NotLattice("meet commutativity", [E[a], E[b]])
            if J[a][M[a][b]] != a or M[a][J[a][b]] != a:
                raise NotLattice("absorption", [E[a], E[b]])
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if J[J[a][b]][c] != J[a][J[b][c]]:
                    raise NotLattice("join associativity", [E[a], E[b], E[c]])
                if M[M[a][b]][c] != M[a][M[b][c]]:
                    raise NotLattice("meet associativity", [E[a], E[b], E[c]])
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if M[a][J[b][c]] != J[M[a][b]][M[a][c]]:
                    raise NotDistributive(
                        f"{E[a]} ∧ ({E[b]} ∨ {E[c]}) != ({E[a]} ∧ {E[b]}) ∨ ({E[a]} ∧ {E[c]})",
                        [E[a], E[b], E[c]])
    z = index[bottom]
    for a in range(n):
        if J[z][a] != a or M[z][a] != z:
            raise BottomViolation(f"{bottom!r} is not below {E[a]!r}", [bottom, E[a]])
    if top is not None:
        t = index[top]
        for a in range(n):
            if J[t][a] != t or M[t][a] != a:
                raise TopViolation(f"{top!r} is not above {E[a]!r}", [top, E[a]])
    # x <= y  iff  x ∧ y = x
    covers = []
    for a in range(n):
        smaller = [b for b in range(n) if b != a and M[b][a] == b]
        maximal = [b for b in smaller if not any(c != b and M[b][c] == b for c in smaller)]
        covers.append(maximal)
    irr = [a for a in range(n) if a != z and len(covers[a]) == 1]
    irr_family = []
    for a in range(n):
        m = 0
        for k, p in enumerate(irr):
            if M[p][a] == p:
                m |= 1 << k
        irr_family.append(m)
    for a in range(n):
        for b in range(n):
            if irr_family[J[a][b]] != irr_family[a] | irr_family[b]:
                raise VerificationError("join not represented by union", [E[a], E[b]])
    D, renaming = from_set_family(irr_family, labels=[str(e) for e in E],
                                  has_top=top is not None)
    return D, {E[a]: renaming[a] for a in range(n)}


@dataclass(frozen=True)
class LatticeHom:
    source: FinDistLattice
    target: FinDistLattice
    mapping: tuple
    bounded: bool = False

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def then(self, g: "LatticeHom") -> "LatticeHom":
        """The composite ``g ∘ self``."""
        if g.source != self.target:
            raise NotAHom("composable homs required")
        return LatticeHom(self.source, g.target,
                          tuple(g.mapping[j] for j in self.mapping),
                          self.bounded and g.bounded)


def identity_hom(D: FinDistLattice) -> LatticeHom:
    return LatticeHom(D, D, tuple(range(len(D))), bounded=D.has_top)


def hom_from_labels(source, target, mapping: dict, bounded=False) -> LatticeHom:
    m = [None] * len(source)
    for a, b in mapping.items():
        m[source.idx(a)] = target.idx(b)
    if None in m:
        missing = [source.labels[i] for i, x in enumerate(m) if x is None]
        raise NotAHom(f"map is not total; missing {missing}", missing)
    return LatticeHom(source, target, tuple(m), bounded)


@dataclass(frozen=True)
class HomReport:
    ok: bool
    law: str = None
    witness: list = field(default=None)


def check_hom(f: LatticeHom) -> HomReport:
    S, T = f.source, f.target
    if len(f.mapping) != len(S) or any(not 0 <= j < len(T) for j in f.mapping):
        return HomReport(False, "total map", None)
    if f.mapping[S.bottom] != T.bottom:
        return HomReport(False, "bottom", [S.labels[S.bottom]])
    if f.bounded and S.has_top and T.has_top and f.mapping[S.top] != T.top:
        return HomReport(False, "top", [S.labels[S.top]])
    m = f.mapping
    for a in range(len(S)):
        for b in range(a + 1, len(S)):
            if m[S.join(a, b)] != T.join(m[a], m[b]):
                return HomReport(False, "join", [S.labels[a], S.labels[b]])
            if m[S.meet(a, b)] != T.meet(m[a], m[b]):
                return HomReport(False, "meet", [S.labels[a], S.labels[b]])
    return HomReport(True)


def require_hom(f: LatticeHom) -> LatticeHom:
    rep = check_hom(f)
    if not rep.ok:
        raise NotAHom(f"{rep.law} not preserved at {rep.witness}", rep.witness)
    return f


@dataclass(frozen=True)
class TopAdjunction:
    lattice: FinDistLattice
    inclusion: LatticeHom   # D -> D∞
    retraction: LatticeHom  # D∞ -> 2
    section: LatticeHom     # 2 -> D∞


def _fresh(name, taken):
    while name in taken:
        name = name + "'"
    return name


def add_top(D: FinDistLattice) -> TopAdjunction:
    """Adjoin a new strict top ∞ above everything (even an existing top)."""
    n = len(D.irr)
    inf = _fresh("∞", set(D.irr.elements) | set(D.labels))
    below = list(D.irr.below) + [(1 << (n + 1)) - 1]
    irr = Poset(D.irr.elements + (inf,), tuple(below))
    # old downsets stay downsets and sort before the new full set
    masks = D.masks + (irr.full,)
    Dinf = FinDistLattice(irr, masks, D.labels + (inf,), True)
    T = two()
    inclusion = LatticeHom(D, Dinf, tuple(range(len(D))), bounded=False)
    retraction = LatticeHom(Dinf, T, (0,) * len(D) + (1,), bounded=True)
    section = LatticeHom(T, Dinf, (0, len(D)), bounded=True)
    return TopAdjunction(Dinf, inclusion, retraction, section)


def drop_top(Dinf: FinDistLattice):
    """Inverse of :func:`add_top`: remove a join-irreducible top.

    Returns ``(D, collapse)`` where ``collapse: D∞ -> D`` sends the top to the
    top of ``D`` and fixes everything else.
    """
    irr = Dinf.irr
    tops = [k for k in range(len(irr)) if irr.below[k] == irr.full]
    if len(Dinf) < 2 or not tops:
        raise NotBounded("top element is not join-irreducible")
    k = tops[0]
    if k != len(irr) - 1:
        raise NotBounded("top point must be the last irreducible")
    sub = Poset(irr.elements[:-1], irr.below[:-1])
    D = FinDistLattice(sub, Dinf.masks[:-1], Dinf.labels[:-1], True)
    collapse = LatticeHom(Dinf, D, tuple(range(len(D))) + (D.top,), bounded=True)
    return D, collapse


def booleanize(D: FinDistLattice):
    """Powerset algebra on the points of ``D`` and the hom ``D -> Bool(D)``."""
    if not D.has_top:
        raise NotBounded("Booleanization needs a bounded lattice")
    pts = validate_poset(D.irr.elements, [])
    B = lattice_from_irr(pts)
    # every subset is a downset of an antichain, so index == mask
    hom = LatticeHom(D, B, tuple(B.position[m] for m in D.masks), bounded=True)
    return B, hom


def prime_filters(D: FinDistLattice, limit: int = PRIME_FILTER_LIMIT) -> list:
    """All prime filters, as frozensets of element indices, canonically sorted.

    In a finite lattice a nonempty, up- and meet-closed set is principal, so it
    suffices to test every ``↑a`` for properness and primality.
    """
    if len(D) > limit:
        raise TooLarge(f"|D| = {len(D)} exceeds prime filter limit {limit}", len(D))
    out = []
    for a in range(len(D)):
        if a == D.bottom:
            continue
        F = frozenset(u for u in range(len(D)) if D.leq(a, u))
        if all(u in F or v in F
               for u in range(len(D)) for v in range(u, len(D))
               if D.join(u, v) in F):
            out.append(F)
    return sorted(out, key=lambda F: sorted(F))


def point_of_filter(D: FinDistLattice, F) -> int:
    """The irreducible index generating a prime filter (its least element)."""
    least = [a for a in F if all(D.leq(a, u) for u in F)]
    if len(least) != 1:
        raise VerificationError("filter has no least element", sorted(F))
    return _point_index(D, least[0])


def _point_index(D, u):
    for k in range(len(D.irr)):
        if D.principal(k) == u:
            return k
    raise VerificationError("least element of a prime filter is not irreducible",
                            D.labels[u])


def natural_iso_to_opens(D: FinDistLattice) -> dict:
    """Check ``U -> {points <= U}`` is a lattice iso ``D -> O(pts(D))``.

    Returns the map (label -> label) on success; raises otherwise.
    """
    P = birkhoff_points(D)
    O = birkhoff_opens(P)
    irr_idx = join_irreducibles(D)
    image = []
    for u in range(len(D)):
        m = 0
        for k, p in enumerate(irr_idx):
            if D.leq(p, u):
                m |= 1 << k
        image.append(O.position[m])
    if sorted(image) != list(range(len(O))):
        raise VerificationError("U -> points(U) is not a bijection", image)
    f = LatticeHom(D, O, tuple(image), bounded=True)
    rep = check_hom(f)
    if not rep.ok:
        raise VerificationError(f"U -> points(U) fails {rep.law}", rep.witness)
    return {D.labels[u]: O.labels[image[u]] for u in range(len(D))}


def round_trip_poset(P: Poset):
    """Order isomorphism ``pts(O(P)) -> P`` found by search, or ``None``."""
    return order.isomorphism(birkhoff_points(birkhoff_opens(P)), P)
