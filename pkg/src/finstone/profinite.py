"""Chain-indexed inverse systems of finite sets (desk-scale profinite spaces).

A system ``X_0 <- X_1 <- ... <- X_k`` with surjective transitions stands for
its inverse limit.  Dually, the Boolean algebra of clopens is the union of the
powersets ``P(X_i)`` along preimage maps, and continuous functions into a
discrete group are functions on some ``X_i``.  Elements of these colimits are
:class:`ColimElement` values kept in earliest-stage normal form.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import NotBounded, NotSurjective, TooLarge, UnknownElement, ValidationError
from .lattice import FinDistLattice, LatticeHom, birkhoff_opens, booleanize
from .motives import motive_hom, motive_module, point_basis_iso
from .order import bits, validate_poset
from .snf import AbGroup, smith_normal_form

BELL = (1, 1, 2, 5, 15, 52, 203, 877, 4140)


@dataclass(frozen=True)
class InverseSystem:
    stages: tuple        # tuple of tuples of element names
    transitions: tuple   # transitions[i][x] = image in stage i of element x of stage i+1

    @property
    def depth(self) -> int:
        return len(self.stages) - 1

    def size(self, i: int) -> int:
        return len(self.stages[i])

    @cached_property
    def _proj(self) -> dict:
        out = {}
        for i in range(len(self.stages)):
            out[(i, i)] = tuple(range(self.size(i)))
            for j in range(i - 1, -1, -1):
                prev = out[(i, j + 1)]
                out[(i, j)] = tuple(self.transitions[j][x] for x in prev)
        return out

    def proj(self, i: int, j: int) -> tuple:
        """Composite map ``X_i -> X_j`` for ``j <= i``."""
        return self._proj[(i, j)]

    def preimage(self, mask: int, j: int, i: int) -> int:
        """Pull a subset of ``X_j`` back to ``X_i``."""
        p = self.proj(i, j)
        out = 0
        for x, y in enumerate(p):
            if mask >> y & 1:
                out |= 1 << x
        return out

    def to_json(self) -> dict:
        return {"stages": [list(s) for s in self.stages],
                "transitions": [{self.stages[i + 1][x]: self.stages[i][y]
                                 for x, y in enumerate(t)}
                                for i, t in enumerate(self.transitions)]}


def validate_system(stages: Sequence[Sequence], transitions: Sequence[dict]) -> InverseSystem:
    """Check that each transition is a total surjection ``X_{i+1} -> X_i``."""
    stages = tuple(tuple(s) for s in stages)
    if not stages:
        raise ValidationError("an inverse system needs at least one stage")
    if len(transitions) != len(stages) - 1:
        raise ValidationError(f"{len(stages)} stages need {len(stages) - 1} transitions")
    for i, s in enumerate(stages):
        if len(set(s)) != len(s):
            raise ValidationError(f"stage {i} has repeated elements", i)
    maps = []
    for i, t in enumerate(transitions):
        src, dst = stages[i + 1], stages[i]
        index = {e: k for k, e in enumerate(dst)}
        m = []
        for x in src:
            if x not in t:
                raise ValidationError(f"transition {i} is not defined on {x!r}", [i, x])
            if t[x] not in index:
                raise UnknownElement(f"transition {i} maps to unknown {t[x]!r}", [i, t[x]])
            m.append(index[t[x]])
        extra = set(t) - set(src)
        if extra:
            raise UnknownElement(f"transition {i} mentions unknown {sorted(map(str, extra))}",
                                 [i, sorted(map(str, extra))])
        if set(m) != set(range(len(dst))):
            missed = [dst[y] for y in range(len(dst)) if y not in set(m)]
            raise NotSurjective(f"transition {i} misses {missed}", i)
        maps.append(tuple(m))
    return InverseSystem(stages, tuple(maps))


def constant_system(elements: Sequence, depth: int = 0) -> InverseSystem:
    ident = {e: e for e in elements}
    return validate_system([list(elements)] * (depth + 1), [ident] * depth)


@dataclass(frozen=True)
class ColimElement:
    stage: int
    payload: object  # bitset (clopen) or tuple of coordinate tuples (function)


class ColimitBoolean:
    """Boolean algebra ``colim P(X_i)`` with earliest-stage normal forms."""

    def __init__(self, system: InverseSystem):
        self.system = system

    def element(self, stage: int, members) -> ColimElement:
        names = self.system.stages[stage]
        if isinstance(members, int):
            mask = members
        else:
            index = {e: k for k, e in enumerate(names)}
            mask = 0
            for m in members:
                if m not in index:
                    raise UnknownElement(f"{m!r} is not in stage {stage}", repr(m))
                mask |= 1 << index[m]
        return self.normalize(ColimElement(stage, mask))

    def normalize(self, e: ColimElement) -> ColimElement:
        sys = self.system
        for j in range(e.stage + 1):
            image = 0
            for x in bits(e.payload):
                image |= 1 << sys.proj(e.stage, j)[x]
            if sys.preimage(image, j, e.stage) == e.payload:
                return ColimElement(j, image)
        raise AssertionError("unreachable: every subset is normal at its own stage")

    def lift(self, e: ColimElement, stage: int) -> int:
        if stage < e.stage:
            raise ValueError("cannot lift to an earlier stage")
        return self.system.preimage(e.payload, e.stage, stage)

    def _binary(self, a, b, op):
        s = max(a.stage, b.stage)
        return self.normalize(ColimElement(s, op(self.lift(a, s), self.lift(b, s))))

    def join(self, a, b):
        return self._binary(a, b, lambda x, y: x | y)

    def meet(self, a, b):
        return self._binary(a, b, lambda x, y: x & y)

    def complement(self, a):
        full = (1 << self.system.size(a.stage)) - 1
        return self.normalize(ColimElement(a.stage, full & ~a.payload))

    def bottom(self):
        return ColimElement(0, 0)

    def top(self):
        return ColimElement(0, (1 << self.system.size(0)) - 1)

    def equal(self, a, b) -> bool:
        return self.normalize(a) == self.normalize(b)

    def members(self, e: ColimElement) -> list:
        return [self.system.stages[e.stage][x] for x in bits(e.payload)]


def colimit_boolean(system: InverseSystem) -> ColimitBoolean:
    return ColimitBoolean(system)


class ContinuousFunctions:
    """Group ``C(lim X_i; A)`` as ``colim Map(X_i, A)`` with normal forms."""

    def __init__(self, system: InverseSystem, A: AbGroup = AbGroup(1)):
        self.system = system
        self.A = A

    def element(self, stage: int, values) -> ColimElement:
        if len(values) != self.system.size(stage):
            raise ValidationError(f"stage {stage} has {self.system.size(stage)} points")
        vals = tuple(self.A.reduce(v if isinstance(v, (list, tuple)) else [v])
                     for v in values)
        return self.normalize(ColimElement(stage, vals))

    def normalize(self, e: ColimElement) -> ColimElement:
        sys = self.system
        for j in range(e.stage + 1):
            p = sys.proj(e.stage, j)
            down = [None] * sys.size(j)
            ok = True
            for x, y in enumerate(p):
                if down[y] is None:
                    down[y] = e.payload[x]
                elif down[y] != e.payload[x]:
                    ok = False
                    break
            if ok:
                return ColimElement(j, tuple(down))
        raise AssertionError("unreachable")

    def lift(self, e: ColimElement, stage: int) -> tuple:
        p = self.system.proj(stage, e.stage)
        return tuple(e.payload[y] for y in p)

    def add(self, a, b):
        s = max(a.stage, b.stage)
        la, lb = self.lift(a, s), self.lift(b, s)
        return self.normalize(ColimElement(s, tuple(self.A.add(x, y) for x, y in zip(la, lb))))

    def neg(self, a):
        return ColimElement(a.stage, tuple(self.A.scale(-1, x) for x in a.payload))

    def zero(self):
        return ColimElement(0, tuple(self.A.zero() for _ in range(self.system.size(0))))

    def group_at(self, stage: int) -> AbGroup:
        """``Map(X_stage, A) = A^{|X_stage|}``."""
        return self.A.power(self.system.size(stage))

    def pullback_matrix(self, i: int) -> list:
        """Precomposition ``Z^{X_i} -> Z^{X_{i+1}}`` (rows: points of ``X_{i+1}``)."""
        t = self.system.transitions[i]
        return [[int(t[x] == y) for y in range(self.system.size(i))]
                for x in range(self.system.size(i + 1))]

    def transition_injective(self, i: int) -> bool:
        m = self.pullback_matrix(i)
        return smith_normal_form(m, ncols=self.system.size(i), left=False,
                                 right=False).rank == self.system.size(i)


def continuous_functions(system: InverseSystem, A: AbGroup = AbGroup(1)) -> ContinuousFunctions:
    return ContinuousFunctions(system, A)


def powerset_lattice(names) -> FinDistLattice:
    return birkhoff_opens(validate_poset([str(n) for n in names], []))


def preimage_hom(system: InverseSystem, i: int) -> LatticeHom:
    """Boolean hom ``P(X_i) -> P(X_{i+1})``; powerset index equals bitset."""
    src = powerset_lattice(system.stages[i])
    dst = powerset_lattice(system.stages[i + 1])
    return LatticeHom(src, dst, tuple(system.preimage(m, i, i + 1) for m in range(len(src))),
                      bounded=True)


@dataclass(frozen=True)
class MotivesVsContinuous:
    motive_ranks: tuple
    function_ranks: tuple
    indicator_unimodular: tuple
    transitions_injective: tuple
    compatible: tuple

    @property
    def ok(self) -> bool:
        return (self.motive_ranks == self.function_ranks
                and all(self.indicator_unimodular) and all(self.transitions_injective)
                and all(self.compatible))

    def to_json(self) -> dict:
        return {"motiveRanks": list(self.motive_ranks),
                "functionRanks": list(self.function_ranks),
                "indicatorUnimodular": list(self.indicator_unimodular),
                "transitionsInjective": list(self.transitions_injective),
                "compatible": list(self.compatible), "ok": self.ok}


def motives_vs_continuous(system: InverseSystem) -> MotivesVsContinuous:
    """Compare ``M(P(X_i))`` with ``C(X_i; Z)`` through indicator functions, stage by stage."""
    C = continuous_functions(system)
    mranks, franks, unimod, inj, compat = [], [], [], [], []
    for i in range(len(system.stages)):
        B = powerset_lattice(system.stages[i])
        M = motive_module(B)
        mranks.append(M.rank)
        franks.append(C.group_at(i).rank)
        unimod.append(point_basis_iso(B, M).unimodular)
    for i in range(system.depth):
        inj.append(C.transition_injective(i))
        # indicator ∘ M(preimage) must equal pullback ∘ indicator; on point
        # bases the indicator map is the identity, so compare matrices directly
        compat.append(motive_hom(preimage_hom(system, i)) == C.pullback_matrix(i))
    return MotivesVsContinuous(tuple(mranks), tuple(franks), tuple(unimod),
                               tuple(inj), tuple(compat))


def set_partitions(elements: Sequence) -> list:
    """All partitions of ``elements`` (restricted growth order), blocks as tuples."""
    elements = list(elements)
    n = len(elements)
    out = []

    def grow(k, labels, nblocks):
        if k == n:
            blocks = [[] for _ in range(nblocks)]
            for e, b in zip(elements, labels):
                blocks[b].append(e)
            out.append(tuple(tuple(b) for b in blocks))
            return
        for b in range(nblocks + 1):
            labels.append(b)
            grow(k + 1, labels, max(nblocks, b + 1))
            labels.pop()

    grow(0, [], 0)
    return out


def refines(fine, coarse) -> bool:
    """Every block of ``coarse`` is a union of blocks of ``fine``."""
    return all(any(set(b) <= set(c) for c in coarse) for b in fine)


@dataclass(frozen=True)
class PartitionReport:
    size: int
    partitions: tuple
    bell_ok: bool
    refinement_pairs: int      # -1 when the order was not materialized
    powerset_colimit_ok: bool
    beta_points: int

    @property
    def ok(self) -> bool:
        return self.bell_ok and self.powerset_colimit_ok and self.beta_points == self.size


def finite_partitions(S: Sequence, max_size: int = 8) -> PartitionReport:
    """Enumerate the finite partitions of ``S`` and check the two colimit/limit facts.

    ``P(S) = colim P(Π)``: each ``P(Π) -> P(S)`` (union of blocks) is compatible
    with refinement, and ``U`` is reached as the block ``U`` of ``{U, U^c}``.
    ``β(S) = lim Π``: compatible threads of blocks are counted.
    """
    S = list(S)
    n = len(S)
    if n > max_size:
        raise TooLarge(f"|S| = {n} > {max_size}", n)
    parts = set_partitions(S)
    pos = {e: k for k, e in enumerate(S)}

    def mask(block):
        m = 0
        for e in block:
            m |= 1 << pos[e]
        return m

    block_masks = [tuple(mask(b) for b in p) for p in parts]
    by_blocks = {frozenset(bm): k for k, bm in enumerate(block_masks)}
    pairs = -1
    order_ok = True
    if n <= 6:
        pairs = 0
        for a, coarse in enumerate(block_masks):
            for b, fine in enumerate(block_masks):
                if a == b or not refines(parts[b], parts[a]):
                    continue
                pairs += 1
                for m in coarse:
                    union = 0
                    for c in fine:
                        if c & ~m == 0:
                            union |= c
                    order_ok &= union == m
    full = (1 << n) - 1
    recipe_ok = True
    for U in range(full + 1):
        blocks = frozenset(m for m in (U, full & ~U) if m)
        if blocks not in by_blocks:
            recipe_ok = False
        elif U and U not in blocks:
            recipe_ok = False
    images = set()
    for bm in block_masks:
        for sel in range(1 << len(bm)):
            u = 0
            for i, m in enumerate(bm):
                if sel >> i & 1:
                    u |= m
            images.add(u)
    colim_ok = order_ok and recipe_ok and images == set(range(full + 1))
    # a thread picks one block per partition, nested along refinement; it is
    # fixed by its block in the discrete partition
    beta = 0
    discrete = [1 << k for k in range(n)]
    for point in discrete:
        thread = [next(m for m in bm if point & m) for bm in block_masks]
        if all(t & point for t in thread):
            beta += 1
    return PartitionReport(n, tuple(parts), len(parts) == BELL[n], pairs, colim_ok, beta)


@dataclass(frozen=True)
class ConstructibleStage:
    system: InverseSystem
    boolean: FinDistLattice
    hom: LatticeHom


def constructible_stage(D: FinDistLattice) -> ConstructibleStage:
    """``Bool(D)`` as a one-stage profinite system on the points of ``D``."""
    if not D.has_top:
        raise NotBounded("constructible topology needs a bounded lattice")
    B, h = booleanize(D)
    return ConstructibleStage(validate_system([list(D.irr.elements)], []), B, h)
