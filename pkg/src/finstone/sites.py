"""Finitary Grothendieck pretopologies on posets with binary meets.

A covering is a pair ``(target, family)`` with ``family`` a bitset of carrier
elements below ``target``.  Identity coverings ``{p <= p}`` are implicit.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import (BaseChangeViolation, InvalidCovering, LocalityViolation,
                     NoMeet)
from .lattice import FinDistLattice
from .order import DownSet, Poset, bits, downset_masks


class PropSheaf(DownSet):
    """A downset closed under every covering of its site."""


@dataclass(frozen=True)
class FinSite:
    carrier: Poset
    coverings: tuple  # of (target index, family bitset)

    @cached_property
    def meet_table(self) -> tuple:
        return meet_table(self.carrier)

    def meet(self, i: int, j: int) -> int:
        return self.meet_table[i][j]

    def describe(self) -> list:
        P = self.carrier
        return [(P.elements[t], P.names(fam)) for t, fam in self.coverings]


def meet_table(P: Poset) -> tuple:
    """Greatest lower bounds of all pairs; raises :class:`NoMeet` if one is missing."""
    by_below = {b: k for k, b in enumerate(P.below)}
    rows = []
    for i in range(len(P)):
        row = []
        for j in range(len(P)):
            k = by_below.get(P.below[i] & P.below[j])
            if k is None:
                raise NoMeet(f"{P.elements[i]!r} and {P.elements[j]!r} have no meet",
                             [P.elements[i], P.elements[j]])
            row.append(k)
        rows.append(tuple(row))
    return tuple(rows)


def _closure(P: Poset, coverings, mask: int) -> int:
    while True:
        new = mask
        for t, fam in coverings:
            if fam & ~new == 0:
                new |= 1 << t
        new = P.downward_closure(new)
        if new == mask:
            return mask
        mask = new


def _covers(site: FinSite, target: int, family: int) -> bool:
    """Whether ``family`` covers ``target`` in the saturation of the coverage."""
    P = site.carrier
    if family >> target & 1:
        return True
    sieve = P.downward_closure(family)
    return bool(_closure(P, site.coverings, sieve) >> target & 1)


def make_site(carrier: Poset, coverings: Iterable) -> FinSite:
    """Build a site from ``(target, [members])`` pairs given by name, unvalidated."""
    out = []
    for target, family in coverings:
        t = carrier.idx(target)
        fam = carrier.mask_of(family)
        for i in bits(fam):
            if not carrier.leq_idx(i, t):
                raise InvalidCovering(
                    f"{carrier.elements[i]!r} is not below covered element {target!r}",
                    [target, carrier.elements[i]])
        out.append((t, fam))
    return FinSite(carrier, tuple(dict.fromkeys(out)))


def validate_site(carrier: Poset, coverings: Iterable) -> FinSite:
    """Check binary meets, base change and locality; return the site.

    Base change and locality are checked against the coverage generated by the
    listed coverings: a family covers ``q`` when sheafifying the sieve it
    generates reaches ``q``.
    """
    site = make_site(carrier, coverings)
    P = carrier
    site.meet_table  # raises NoMeet
    for t, fam in site.coverings:
        for q in bits(P.below[t]):
            translated = 0
            for f in bits(fam):
                translated |= 1 << site.meet(f, q)
            if not _covers(site, q, translated):
                raise BaseChangeViolation(
                    f"covering {P.names(fam)} of {P.elements[t]!r} does not pull back "
                    f"to a covering of {P.elements[q]!r}",
                    {"target": P.elements[t], "family": P.names(fam), "q": P.elements[q]})
    # one round of composition: refine one member by one of its own coverings
    by_target = {}
    for t, fam in site.coverings:
        by_target.setdefault(t, []).append(fam)
    for t, fam in site.coverings:
        for f in bits(fam):
            for sub in by_target.get(f, ()):
                composite = (fam & ~(1 << f)) | sub
                if not _covers(site, t, composite):
                    raise LocalityViolation(
                        f"composite family {P.names(composite)} does not cover {P.elements[t]!r}",
                        {"target": P.elements[t], "family": P.names(composite)})
    return site


def identity_site(carrier: Poset) -> FinSite:
    return FinSite(carrier, ())


def fin_coverage(D: FinDistLattice) -> FinSite:
    """The finite-join coverage of ``D`` by its generators.

    Generators: the empty family covering 0 and ``{U, V}`` covering ``U ∨ V``
    for every pair.  A downset closed under these is closed under all finite
    joins, so this generates the full finite-join coverage.
    """
    P = D.as_poset()
    covs = [(D.bottom, 0)]
    for a in range(len(D)):
        for b in range(a + 1, len(D)):
            covs.append((D.join(a, b), (1 << a) | (1 << b)))
    return FinSite(P, tuple(covs))


def is_sheaf(S: FinSite, F) -> bool:
    mask = F.mask if isinstance(F, DownSet) else F
    return all(mask >> t & 1 or fam & ~mask for t, fam in S.coverings)


def sheafify(S: FinSite, F) -> PropSheaf:
    """Least sheaf containing ``F``: iterate closure under coverings to a fixed point."""
    mask = F.mask if isinstance(F, DownSet) else F
    return PropSheaf(S.carrier, _closure(S.carrier, S.coverings, S.carrier.downward_closure(mask)))


def enumerate_sheaves(S: FinSite, budget=None) -> list:
    """All propositional sheaves, in canonical downset order.

    Only the enumeration budget limits the carrier; lattice carriers routinely
    exceed the poset size bound while having few downsets.
    """
    P = S.carrier
    return [PropSheaf(P, m) for m in downset_masks(P, budget, max_size=max(len(P), 1))
            if is_sheaf(S, m)]


@dataclass(frozen=True)
class BasisReport:
    lattice_size: int
    sheaf_count: int
    all_principal: bool
    bijection: dict  # lattice label -> sheaf members

    @property
    def ok(self) -> bool:
        return self.all_principal and self.sheaf_count == self.lattice_size


def basis_theorem(D: FinDistLattice, budget=None) -> BasisReport:
    """Sheaves on ``fin_coverage(D)`` versus elements of ``D`` via ``U -> h_U``.

    Also checks the inverse ``f -> ⋁ f^{-1}(1)`` on every sheaf.
    """
    S = fin_coverage(D)
    sheaves = enumerate_sheaves(S, budget)
    P = S.carrier
    all_principal = True
    for f in sheaves:
        joined = 0
        for u in bits(f.mask):
            joined |= D.masks[u]
        # f must equal h_U for U = ⋁ f^{-1}(1)
        if P.below[D.position[joined]] != f.mask:
            all_principal = False
    bijection = {D.labels[u]: P.names(P.below[u]) for u in range(len(D))}
    return BasisReport(len(D), len(sheaves), all_principal, bijection)


def fin_sheaf_by_joins(D: FinDistLattice, mask: int) -> bool:
    """Reference test for fin sheaves: contains 0 and closed under binary joins."""
    if not mask & 1:
        return False
    members = list(bits(mask))
    return all(mask >> D.join(a, b) & 1 for a in members for b in members)
