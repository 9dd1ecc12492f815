"""Graded groups of sheaf categories on locally coherent spaces.

For a finitary localizing invariant with coefficient groups ``π_n F(C)`` given
by a :class:`CoeffProfile`, the degree-n group for the space dual to ``D`` is
``M(D) ⊗ π_n F(C)``.  Since ``M(D)`` is free this is a direct power of the
coefficient group.  Degrees outside the profile window are unknown, never 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import RouteMismatch, ValidationError
from .lattice import FinDistLattice, birkhoff_opens, booleanize
from .motives import certify_free, motive_module
from .order import Poset
from .profinite import constructible_stage, continuous_functions
from .snf import AbGroup


@dataclass(frozen=True)
class CoeffProfile:
    label: str
    window: tuple          # (lo, hi) inclusive
    groups: dict = field(hash=False)  # degree -> AbGroup; absent in-window degrees are 0

    def __post_init__(self):
        lo, hi = self.window
        if lo > hi:
            raise ValidationError(f"empty window {self.window}")
        for n in self.groups:
            if not lo <= n <= hi:
                raise ValidationError(f"degree {n} outside window {self.window}", n)

    @property
    def degrees(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def group(self, n: int):
        """Coefficient group in degree ``n``, or ``None`` outside the window."""
        if n not in self.degrees:
            return None
        return self.groups.get(n, AbGroup())

    def to_json(self) -> dict:
        return {"label": self.label, "window": list(self.window),
                "groups": {str(n): self.group(n).to_json() for n in self.degrees}}


def sphere_profile() -> CoeffProfile:
    """K-theory of the sphere spectrum in degrees 0 and 1: Z and {±1} = Z/2."""
    return CoeffProfile("K(sphere), degrees 0..1", (0, 1), {0: AbGroup(1), 1: AbGroup(0, (2,))})


def constant_profile(A: AbGroup, label: str = None) -> CoeffProfile:
    return CoeffProfile(label or str(A), (0, 0), {0: A})


def standard_profiles() -> list:
    return [constant_profile(AbGroup(1), "Z"),
            constant_profile(AbGroup(0, (2,)), "Z/2"),
            constant_profile(AbGroup(1, (6,)), "Z + Z/6")]


@dataclass(frozen=True)
class KResult:
    label: str
    window: tuple
    groups: tuple   # AbGroup per degree in the window, ascending
    routes: tuple = ()

    def group(self, n: int):
        lo, hi = self.window
        return self.groups[n - lo] if lo <= n <= hi else None

    def describe(self, n: int) -> str:
        g = self.group(n)
        return "unknown" if g is None else str(g)

    def to_json(self) -> dict:
        lo, hi = self.window
        return {"label": self.label, "window": [lo, hi],
                "groups": {str(n): self.group(n).to_json() for n in range(lo, hi + 1)},
                "routes": list(self.routes)}


def tensor_group(rank: int, A: AbGroup) -> AbGroup:
    """``Z^rank ⊗ A``."""
    return A.power(rank)


def _from_rank(rank: int, profile: CoeffProfile, route: str) -> KResult:
    return KResult(profile.label, profile.window,
                   tuple(tensor_group(rank, profile.group(n)) for n in profile.degrees),
                   (route,))


def k_of_locally_coherent(D: FinDistLattice, profile: CoeffProfile) -> KResult:
    M = motive_module(D)
    certify_free(M)
    return _from_rank(M.rank, profile, "motives")


@dataclass(frozen=True)
class RouteReport:
    result: KResult
    by_route: dict = field(hash=False)   # route name -> KResult

    @property
    def agree(self) -> bool:
        groups = {r.groups for r in self.by_route.values()}
        return len(groups) == 1


def _agree(by_route: dict) -> RouteReport:
    first = next(iter(by_route.values()))
    for name, res in by_route.items():
        if res.groups != first.groups:
            raise RouteMismatch(
                f"route {name!r} gives {[str(g) for g in res.groups]}, "
                f"expected {[str(g) for g in first.groups]}",
                {k: [str(g) for g in v.groups] for k, v in by_route.items()})
    merged = KResult(first.label, first.window, first.groups, tuple(by_route))
    return RouteReport(merged, by_route)


def coherent_vs_constructible(D: FinDistLattice, profile: CoeffProfile) -> RouteReport:
    """Three routes to the same groups.

    A: ``M(D) ⊗ π_n``.  B: ``M(Bool(D)) ⊗ π_n``.  C: ``π_n``-valued functions on
    the discrete constructible stage.
    """
    a = k_of_locally_coherent(D, profile)
    B, _ = booleanize(D)
    b = k_of_locally_coherent(B, profile)
    stage = constructible_stage(D).system
    c_groups = tuple(continuous_functions(stage, profile.group(n)).group_at(0)
                     for n in profile.degrees)
    c = KResult(profile.label, profile.window, c_groups, ("constructible functions",))
    return _agree({"motives": a, "booleanization": b, "constructible functions": c})


def semiorthogonal_rank_check(P: Poset, profile: CoeffProfile) -> RouteReport:
    """``⊕_{p in P} π_n`` against ``M(O(P)) ⊗ π_n``."""
    direct = KResult(profile.label, profile.window,
                     tuple(_direct_sum([profile.group(n)] * len(P)) for n in profile.degrees),
                     ("sum over points",))
    via = k_of_locally_coherent(birkhoff_opens(P), profile)
    return _agree({"sum over points": direct, "motives": via})


def _direct_sum(groups) -> AbGroup:
    out = AbGroup()
    for g in groups:
        out = out + g
    return out

