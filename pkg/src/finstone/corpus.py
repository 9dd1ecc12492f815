"""Deterministic test corpora: exhaustive small posets and seeded random data."""
from __future__ import annotations

import random
from functools import lru_cache

from .lattice import FinDistLattice, LatticeHom, birkhoff_opens
from .motives import ValuationData
from .order import Poset, bits, canonical_form, downset_masks, validate_poset
from .profinite import InverseSystem, validate_system
from .sites import FinSite, fin_coverage
from .snf import AbGroup


def _naturally_labeled(n: int):
    """Down-closure tuples of posets on 0..n-1 where i < j in the order implies i < j."""
    if n == 0:
        yield ()
        return
    for below in _naturally_labeled(n - 1):
        P = Poset(tuple(range(n - 1)), below)
        for d in downset_masks(P):
            yield below + (d | 1 << (n - 1),)


@lru_cache(maxsize=None)
def posets_of_size(n: int) -> tuple:
    """One representative per isomorphism class, named ``p0..p{n-1}``."""
    seen = {}
    names = tuple(f"p{i}" for i in range(n))
    for below in _naturally_labeled(n):
        P = Poset(names, below)
        key = canonical_form(P)
        if key not in seen:
            seen[key] = P
    return tuple(validate_poset(names, P.relation_pairs()) for _, P in sorted(seen.items()))


def all_posets(max_n: int = 5) -> list:
    out = []
    for n in range(max_n + 1):
        out.extend(posets_of_size(n))
    return out


def lattice_corpus(max_points: int = 5) -> list:
    """``O(P)`` for every poset on at most ``max_points`` elements (|D| <= 32 at 5)."""
    return [birkhoff_opens(P) for P in all_posets(max_points)]


def random_poset(rng: random.Random, n: int, density: float = None) -> Poset:
    """Random DAG on ``n`` nodes, transitively closed, with shuffled names."""
    if density is None:
        density = rng.uniform(0.1, 0.7)
    below = [1 << i for i in range(n)]
    for j in range(n):
        for i in range(j):
            if rng.random() < density:
                below[j] |= below[i]
    # transitive closure follows from building in index order
    perm = list(range(n))
    rng.shuffle(perm)
    names = [f"q{perm[i]}" for i in range(n)]
    pairs = [(names[i], names[j]) for j in range(n) for i in bits(below[j]) if i != j]
    return validate_poset(names, pairs)


def random_lattices(rng: random.Random, count: int, max_elements: int = 32,
                    max_points: int = 7) -> list:
    out = []
    while len(out) < count:
        P = random_poset(rng, rng.randint(0, max_points))
        D = birkhoff_opens(P)
        if len(D) <= max_elements:
            out.append(D)
    return out


def tables_of(D: FinDistLattice, rng: random.Random = None):
    """Join/meet tables of ``D`` with (optionally shuffled) opaque names."""
    n = len(D)
    order = list(range(n))
    if rng is not None:
        rng.shuffle(order)
    names = [f"e{k}" for k in range(n)]
    name_of = {u: names[k] for k, u in enumerate(order)}
    elements = [name_of[u] for u in order]
    join = [[name_of[D.join(a, b)] for b in order] for a in order]
    meet = [[name_of[D.meet(a, b)] for b in order] for a in order]
    return elements, join, meet, name_of[D.bottom], name_of[D.top]


def random_monotone_map(rng: random.Random, Q: Poset, P: Poset, tries: int = 200):
    """A random order-preserving map ``Q -> P`` (index tuple), or ``None``."""
    if len(P) == 0:
        return () if len(Q) == 0 else None
    for _ in range(tries):
        f = [None] * len(Q)
        ok = True
        for i in Q.linear_extension:
            # must lie above the images of everything below i
            lower = [f[j] for j in bits(Q.strictly_below(i))]
            cands = [p for p in range(len(P)) if all(P.leq_idx(x, p) for x in lower)]
            if not cands:
                ok = False
                break
            f[i] = rng.choice(cands)
        if ok:
            return tuple(f)
    return None


def preimage_hom(f: tuple, Q: Poset, P: Poset) -> LatticeHom:
    """Monotone ``f: Q -> P`` induces ``O(P) -> O(Q)``, ``U -> f^{-1}(U)``."""
    OP, OQ = birkhoff_opens(P), birkhoff_opens(Q)
    mapping = []
    for m in OP.masks:
        pre = 0
        for i, p in enumerate(f):
            if m >> p & 1:
                pre |= 1 << i
        mapping.append(OQ.position[pre])
    return LatticeHom(OP, OQ, tuple(mapping), bounded=True)


def random_valuation(rng: random.Random, D: FinDistLattice, A: AbGroup,
                     spread: int = 9):
    """Random valuation from independent values on the points, summed over each element.

    Returns ``(valuation, weights)``; the weights are the expected coordinates
    of the factoring hom on the point basis.
    """
    weights = [A.reduce([rng.randint(-spread, spread) for _ in range(A.ngens)])
               for _ in range(len(D.irr))]
    values = []
    for m in D.masks:
        v = A.zero()
        for p in bits(m):
            v = A.add(v, weights[p])
        values.append(v)
    return ValuationData(A, tuple(values)), weights


def saturate_base_change(site: FinSite) -> FinSite:
    """Add ``{f ∧ q}`` covering ``q`` for every covering and every ``q`` below its target."""
    P = site.carrier
    covs = set(site.coverings)
    frontier = list(site.coverings)
    while frontier:
        new = []
        for t, fam in frontier:
            for q in bits(P.below[t]):
                tr = 0
                for f in bits(fam):
                    tr |= 1 << site.meet(f, q)
                if tr >> q & 1:
                    continue
                c = (q, tr)
                if c not in covs:
                    covs.add(c)
                    new.append(c)
        frontier = new
    return FinSite(P, tuple(sorted(covs)))


def random_site(rng: random.Random, D: FinDistLattice) -> FinSite:
    """Random sub-coverage of the fin coverage, closed under base change."""
    full = fin_coverage(D)
    keep = tuple(c for c in full.coverings if rng.random() < 0.3)
    return saturate_base_change(FinSite(full.carrier, keep))


def random_downset(rng: random.Random, P: Poset) -> int:
    m = 0
    for i in range(len(P)):
        if rng.random() < 0.3:
            m |= 1 << i
    return P.downward_closure(m)


def random_system(rng: random.Random, depth: int = None, max_size: int = 5) -> InverseSystem:
    depth = rng.randint(0, 2) if depth is None else depth
    sizes = sorted(rng.randint(1, max_size) for _ in range(depth + 1))
    stages = []
    for i, n in enumerate(sizes):
        stages.append([f"s{i}_{k}" for k in range(n)])
    transitions = []
    for i in range(depth):
        src, dst = stages[i + 1], stages[i]
        images = list(range(len(dst))) + [rng.randrange(len(dst))
                                          for _ in range(len(src) - len(dst))]
        rng.shuffle(images)
        transitions.append({x: dst[y] for x, y in zip(src, images)})
    return validate_system(stages, transitions)


def chain_lattice(n_points: int) -> FinDistLattice:
    """Chain with ``n_points + 1`` elements."""
    names = [f"a{i}" for i in range(n_points)]
    return birkhoff_opens(validate_poset(names, [(names[i], names[j])
                                                 for i in range(n_points)
                                                 for j in range(i + 1, n_points)]))
