"""Finite posets, downsets, heights and incidence algebras.

Elements are addressed by their position in ``Poset.elements``; subsets are
Python ints used as bitsets (bit ``i`` set means element ``i`` is a member).
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Hashable, Iterable, Sequence

from .errors import (DuplicateElement, NotAntisymmetric, NotDownward, NotReflexive,
                     NotTransitive, TooLarge, UnknownElement)

MAX_POSET_SIZE = 20
DEFAULT_BUDGET = 2 ** 20


def enumeration_budget(budget=None):
    """Resolve an enumeration cap: explicit value, then $FINSTONE_BUDGET, then default."""
    if budget is not None:
        return int(budget)
    env = os.environ.get("FINSTONE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def bits(mask: int):
    """Indices of the set bits of ``mask`` in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class Poset:
    """A validated finite partial order.

    ``below[i]`` is the bitset of all ``j`` with ``j <= i`` (including ``i``).
    Construct through :func:`validate_poset` or :meth:`from_below`.
    """

    elements: tuple
    below: tuple

    @classmethod
    def from_below(cls, elements: Sequence[Hashable], below: Sequence[int]) -> "Poset":
        """Build from down-closure bitsets, running the full axiom check."""
        elements = tuple(elements)
        pairs = [(elements[j], elements[i])
                 for i, m in enumerate(below) for j in bits(m)]
        return validate_poset(elements, pairs, implicit_reflexive=False)

    def __len__(self):
        return len(self.elements)

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def above(self) -> tuple:
        up = [0] * len(self)
        for i, m in enumerate(self.below):
            for j in bits(m):
                up[j] |= 1 << i
        return tuple(up)

    @cached_property
    def full(self) -> int:
        return (1 << len(self)) - 1

    def idx(self, p) -> int:
        try:
            return self.index[p]
        except KeyError:
            raise UnknownElement(f"unknown element {p!r}", repr(p)) from None

    def leq(self, p, q) -> bool:
        return bool(self.below[self.idx(q)] >> self.idx(p) & 1)

    def leq_idx(self, i: int, j: int) -> bool:
        return bool(self.below[j] >> i & 1)

    def strictly_below(self, i: int) -> int:
        return self.below[i] & ~(1 << i)

    @cached_property
    def linear_extension(self) -> tuple:
        """Indices sorted so that every element follows everything below it."""
        return tuple(sorted(range(len(self)),
                            key=lambda i: (bin(self.below[i]).count("1"), i)))

    def is_downset(self, mask: int) -> bool:
        return all(self.below[i] & ~mask == 0 for i in bits(mask))

    def downward_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.below[i]
        return out

    def names(self, mask: int) -> list:
        return [self.elements[i] for i in bits(mask)]

    def mask_of(self, members: Iterable) -> int:
        m = 0
        for p in members:
            m |= 1 << self.idx(p)
        return m

    def covers(self) -> list:
        """Pairs ``(i, j)`` with ``i < j`` and nothing strictly between."""
        out = []
        for j in range(len(self)):
            strict = self.strictly_below(j)
            for i in bits(strict):
                if not any(self.strictly_below(k) >> i & 1 for k in bits(strict)):
                    out.append((i, j))
        return sorted(out)

    def relation_pairs(self) -> list:
        """All non-reflexive related pairs ``(p, q)`` with ``p < q``, by name."""
        return [(self.elements[i], self.elements[j])
                for j in range(len(self)) for i in bits(self.strictly_below(j))]

    def relabel(self, names: Sequence[Hashable]) -> "Poset":
        if len(names) != len(self):
            raise ValueError("wrong number of names")
        return validate_poset(names, [(names[i], names[j])
                                      for j in range(len(self))
                                      for i in bits(self.strictly_below(j))])


@dataclass(frozen=True)
class DownSet:
    """A downward closed subset of ``poset``, stored as a bitset."""

    poset: Poset
    mask: int

    def __post_init__(self):
        if not self.poset.is_downset(self.mask):
            raise NotDownward(f"{self.poset.names(self.mask)} is not downward closed",
                              self.poset.names(self.mask))

    @property
    def members(self) -> list:
        return self.poset.names(self.mask)

    def __contains__(self, p) -> bool:
        return bool(self.mask >> self.poset.idx(p) & 1)

    def __len__(self):
        return bin(self.mask).count("1")

    def __or__(self, other: "DownSet") -> "DownSet":
        return DownSet(self.poset, self.mask | other.mask)

    def __and__(self, other: "DownSet") -> "DownSet":
        return DownSet(self.poset, self.mask & other.mask)

    def __le__(self, other: "DownSet") -> bool:
        return self.mask & ~other.mask == 0

    def __repr__(self):
        return "DownSet({" + ", ".join(map(str, self.members)) + "})"


def validate_poset(elements: Sequence[Hashable], leq: Iterable[tuple],
                   implicit_reflexive: bool = True) -> Poset:
    """Check a raw relation and wrap it as a :class:`Poset`.

    ``leq`` is an iterable of ``(p, q)`` pairs meaning ``p <= q``.  Reflexive
    pairs are added when ``implicit_reflexive`` is true (the JSON convention);
    otherwise they must be listed.  Nothing is ever closed transitively: a
    missing composite raises :class:`NotTransitive` naming the triple.
    """
    elements = tuple(elements)
    index = {}
    for i, e in enumerate(elements):
        if e in index:
            raise DuplicateElement(f"duplicate element {e!r}", repr(e))
        index[e] = i
    n = len(elements)
    below = [0] * n
    for p, q in leq:
        for x in (p, q):
            if x not in index:
                raise UnknownElement(f"relation mentions unknown element {x!r}", repr(x))
        below[index[q]] |= 1 << index[p]
    for i in range(n):
        if not below[i] >> i & 1:
            if implicit_reflexive:
                below[i] |= 1 << i
            else:
                raise NotReflexive(f"missing {elements[i]!r} <= {elements[i]!r}",
                                   [elements[i]])
    for i in range(n):
        for j in bits(below[i] & ~(1 << i)):
            if below[j] >> i & 1:
                a, b = sorted((i, j))
                raise NotAntisymmetric(
                    f"{elements[a]!r} <= {elements[b]!r} and {elements[b]!r} <= {elements[a]!r}",
                    [elements[a], elements[b]])
    for c in range(n):
        for b in bits(below[c]):
            missing = below[b] & ~below[c]
            if missing:
                a = next(bits(missing))
                raise NotTransitive(
                    f"{elements[a]!r} <= {elements[b]!r} <= {elements[c]!r} "
                    f"but not {elements[a]!r} <= {elements[c]!r}",
                    [elements[a], elements[b], elements[c]])
    return Poset(elements, tuple(below))


def chain(n: int, prefix: str = "x") -> Poset:
    names = [f"{prefix}{i}" for i in range(n)]
    return validate_poset(names, [(names[i], names[j])
                                  for i in range(n) for j in range(i + 1, n)])


def antichain(n: int, prefix: str = "x") -> Poset:
    return validate_poset([f"{prefix}{i}" for i in range(n)], [])


def downset_masks(P: Poset, budget=None, max_size: int = MAX_POSET_SIZE) -> list:
    """All downsets of ``P`` as bitsets, sorted ascending.

    Depth-first over a linear extension: an element may be included only once
    everything strictly below it is, so every leaf is a downset and there is no
    backtracking waste.
    """
    budget = enumeration_budget(budget)
    if len(P) > max_size:
        raise TooLarge(f"poset has {len(P)} > {max_size} elements", len(P))
    order = P.linear_extension
    strict = [P.strictly_below(i) for i in range(len(P))]
    out = []
    stack = [(0, 0)]
    while stack:
        k, mask = stack.pop()
        if k == len(order):
            out.append(mask)
            if len(out) > budget:
                raise TooLarge(f"more than {budget} downsets", budget)
            continue
        i = order[k]
        stack.append((k + 1, mask))
        if strict[i] & ~mask == 0:
            stack.append((k + 1, mask | 1 << i))
    out.sort()
    return out


def downsets(P: Poset, budget=None) -> list:
    """All downsets of ``P`` in canonical (ascending bitset) order."""
    return [DownSet(P, m) for m in downset_masks(P, budget)]


def principal_downset(P: Poset, p) -> DownSet:
    return DownSet(P, P.below[P.idx(p)])


def height(P: Poset) -> dict:
    """Length of the longest strict chain ending at each element."""
    ht = [0] * len(P)
    for i in P.linear_extension:
        ht[i] = max((ht[j] + 1 for j in bits(P.strictly_below(i))), default=0)
    return {P.elements[i]: ht[i] for i in range(len(P))}


def _invariant(P: Poset, i: int):
    return (bin(P.below[i]).count("1"), bin(P.above[i]).count("1"))


def isomorphism(P: Poset, Q: Poset):
    """An order isomorphism ``P -> Q`` as a dict of names, or ``None``."""
    n = len(P)
    if n != len(Q):
        return None
    inv_p = [_invariant(P, i) for i in range(n)]
    inv_q = [_invariant(Q, i) for i in range(n)]
    if sorted(inv_p) != sorted(inv_q):
        return None
    order = P.linear_extension
    image = [-1] * n
    used = [False] * n

    def extend(k):
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if used[j] or inv_q[j] != inv_p[i]:
                continue
            # all previously placed elements must relate to i the same way
            if any(P.leq_idx(order[t], i) != Q.leq_idx(image[order[t]], j)
                   or P.leq_idx(i, order[t]) != Q.leq_idx(j, image[order[t]])
                   for t in range(k)):
                continue
            image[i], used[j] = j, True
            if extend(k + 1):
                return True
            used[j] = False
        image[i] = -1
        return False

    if not extend(0):
        return None
    return {P.elements[i]: Q.elements[image[i]] for i in range(n)}


def canonical_form(P: Poset) -> tuple:
    """Isomorphism-invariant key (brute force over permutations; small posets only)."""
    n = len(P)
    best = None
    for perm in permutations(range(n)):
        pos = [0] * n
        for k, i in enumerate(perm):
            pos[i] = k
        key = tuple(sorted((pos[i], pos[j]) for j in range(n)
                           for i in bits(P.strictly_below(j))))
        if best is None or key < best:
            best = key
    return (n, best)


class IncidenceAlgebra:
    """Integer incidence algebra of a finite poset.

    Elements are tuples of ints aligned with ``basis_pairs``; the product is
    convolution over intervals.
    """

    def __init__(self, poset: Poset):
        self.poset = poset
        n = len(poset)
        self.basis_pairs = tuple((i, j) for i in range(n) for j in range(n)
                                 if poset.leq_idx(i, j))
        self.position = {pq: k for k, pq in enumerate(self.basis_pairs)}

    @property
    def rank(self) -> int:
        return len(self.basis_pairs)

    def element(self, values: dict) -> tuple:
        """Element from a dict keyed by index pairs; missing pairs are 0."""
        out = [0] * self.rank
        for (i, j), v in values.items():
            out[self.position[(i, j)]] = int(v)
        return tuple(out)

    def value(self, f: tuple, p, q) -> int:
        P = self.poset
        k = self.position.get((P.idx(p), P.idx(q)))
        return 0 if k is None else f[k]

    def zero(self) -> tuple:
        return (0,) * self.rank

    def zeta(self) -> tuple:
        return (1,) * self.rank

    def delta(self) -> tuple:
        return tuple(int(i == j) for i, j in self.basis_pairs)

    def add(self, f: tuple, g: tuple) -> tuple:
        return tuple(a + b for a, b in zip(f, g))

    def multiply(self, f: tuple, g: tuple) -> tuple:
        P, pos = self.poset, self.position
        out = []
        for i, k in self.basis_pairs:
            between = P.above[i] & P.below[k]
            out.append(sum(f[pos[(i, j)]] * g[pos[(j, k)]] for j in bits(between)))
        return tuple(out)

    def moebius(self) -> tuple:
        """Convolution inverse of zeta via mu(p,p)=1, mu(p,r) = -sum_{p<=q<r} mu(p,q)."""
        P = self.poset
        mu = {}
        for i in range(len(P)):
            for k in P.linear_extension:
                if not P.leq_idx(i, k):
                    continue
                if i == k:
                    mu[(i, k)] = 1
                else:
                    strict = P.above[i] & P.strictly_below(k)
                    mu[(i, k)] = -sum(mu[(i, j)] for j in bits(strict))
        return self.element(mu)


def incidence_algebra(P: Poset) -> IncidenceAlgebra:
    return IncidenceAlgebra(P)
