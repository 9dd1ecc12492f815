"""Seeded property suites.

Every suite is a sequence of named checks over a deterministic corpus.  A
check passes when its function returns a truthy value; a falsy value or a
:class:`FinstoneError` is a failure, recorded with a JSON counterexample.
Reports carry no timings, so equal seeds give byte-identical output.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import corpus
from .errors import FinstoneError, ValidationError
from .intmat import matmul
from .ktheory import (coherent_vs_constructible, k_of_locally_coherent,
                      semiorthogonal_rank_check, sphere_profile, standard_profiles)
from .lattice import (FinDistLattice, add_top, birkhoff_opens, birkhoff_points,
                      booleanize, drop_top, from_tables, natural_iso_to_opens,
                      prime_filters, round_trip_poset)
from .motives import (booleanization_iso, certify_free, factor_valuation,
                      motive_hom, motive_module, point_basis_iso, ring_structure,
                      split_top)
from .order import bits
from .profinite import (colimit_boolean, continuous_functions, finite_partitions,
                        motives_vs_continuous)
from .scissors import GridGeometry, generated_sublattice, polytope_module, scissors_relation
from .sites import (basis_theorem, fin_coverage, fin_sheaf_by_joins, identity_site,
                    is_sheaf, sheafify)
from .snf import AbGroup

DEFAULT_SEED = 7
MAX_COUNTEREXAMPLES = 3
SUITES = ("birkhoff", "freeness", "sheaf", "valuation", "profinite", "ktheory-routes",
          "scissors")


def _poset_doc(P) -> dict:
    return {"elements": list(P.elements),
            "leq": [[P.elements[i], P.elements[j]] for j in range(len(P))
                    for i in bits(P.strictly_below(j))]}


def _lattice_doc(D: FinDistLattice) -> dict:
    return {"posetOfIrreducibles": _poset_doc(D.irr), "lowerBounded": not D.has_top}


@dataclass
class Tally:
    name: str
    cases: int = 0
    failed: int = 0
    counterexamples: list = field(default_factory=list)

    def run(self, fn, witness):
        """Run one case; ``witness`` is a thunk producing its JSON description."""
        self.cases += 1
        try:
            ok = fn()
            err = None
        except FinstoneError as e:
            ok, err = False, e.to_json()
        if ok:
            return True
        self.failed += 1
        if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
            self.counterexamples.append({"input": witness(), "error": err})
        return False

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.cases > 0

    def to_json(self) -> dict:
        out = {"check": self.name, "cases": self.cases, "failed": self.failed}
        if self.counterexamples:
            out["counterexamples"] = self.counterexamples
        return out


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list

    @property
    def ok(self) -> bool:
        return all(t.ok for t in self.checks)

    def to_json(self) -> dict:
        return {"suite": self.suite, "seed": self.seed,
                "status": "pass" if self.ok else "fail",
                "checks": [t.to_json() for t in self.checks]}


# birkhoff ------------------------------------------------------------------

def check_birkhoff(seed=DEFAULT_SEED, max_n=5, random_count=200, random_n=7) -> list:
    rng = random.Random(seed)
    posets = corpus.all_posets(max_n)
    posets += [corpus.random_poset(rng, rng.randint(0, random_n)) for _ in range(random_count)]
    pts = Tally("points-of-opens")
    opens = Tally("opens-of-points")
    filters = Tally("prime-filters")
    tables = Tally("from-tables-roundtrip")
    for P in posets:
        w = lambda P=P: _poset_doc(P)
        pts.run(lambda: round_trip_poset(P) is not None, w)
        D = birkhoff_opens(P)
        opens.run(lambda: bool(natural_iso_to_opens(D)), w)
        if len(D) <= 32:
            filters.run(lambda: len(prime_filters(D)) == len(P), w)
    # the lattice-side round trip starting from bare tables with scrambled names
    for P in corpus.all_posets(max_n):
        D0 = birkhoff_opens(P)
        elements, join, meet, bottom, top = corpus.tables_of(D0, rng)

        def case():
            D, _ = from_tables(elements, join, meet, bottom, top)
            natural_iso_to_opens(D)
            return len(D) == len(D0) and round_trip_poset(birkhoff_points(D)) is not None \
                and len(birkhoff_points(D)) == len(P)
        tables.run(case, lambda P=P: _poset_doc(P))
    return [pts, opens, filters, tables]


# freeness ------------------------------------------------------------------

def freeness_corpus(seed=DEFAULT_SEED, random_count=200, max_elements=32) -> list:
    rng = random.Random(seed)
    return corpus.lattice_corpus() + corpus.random_lattices(rng, random_count, max_elements)


def check_free(lattices) -> list:
    t = Tally("snf-no-torsion")
    for D in lattices:
        t.run(lambda: certify_free(motive_module(D)).free, lambda D=D: _lattice_doc(D))
    return [t]


def check_rank_oracle(lattices) -> list:
    rank = Tally("rank-equals-points")
    uni = Tally("point-indicator-unimodular")
    for D in lattices:
        w = lambda D=D: _lattice_doc(D)
        M = motive_module(D)
        rank.run(lambda: M.rank == len(birkhoff_points(D)), w)
        uni.run(lambda: point_basis_iso(D, M).unimodular, w)
    return [rank, uni]


def check_split(lattices) -> list:
    t = Tally("split-top")
    d = Tally("drop-top-inverse")
    for D in lattices:
        w = lambda D=D: _lattice_doc(D)

        def case():
            rep = split_top(D)
            return (rep.rank_with_top == rep.rank + 1
                    and matmul(rep.retraction, rep.section) == [[1]])
        t.run(case, w)

        def back():
            adj = add_top(D)
            D2, collapse = drop_top(adj.lattice)
            return D2.masks == D.masks and all(collapse(adj.inclusion(u)) == u
                                               for u in range(len(D)))
        d.run(back, w)
    return [t, d]


def check_booleanization(lattices) -> list:
    t = Tally("booleanization-unimodular")
    c = Tally("booleanization-complements")
    for D in lattices:
        w = lambda D=D: _lattice_doc(D)
        t.run(lambda: abs(booleanization_iso(D).determinant) == 1, w)

        def comp():
            B, h = booleanize(D)
            return B.is_boolean and all(B.complement(u) is not None for u in range(len(B))) \
                and len(B) == 1 << len(D.irr)
        c.run(comp, w)
    return [t, c]


# sheaves -------------------------------------------------------------------

def check_basis_theorem(lattices) -> list:
    t = Tally("sheaves-are-principal")
    for D in lattices:
        if len(D) <= 32:
            t.run(lambda: basis_theorem(D).ok, lambda D=D: _lattice_doc(D))
    return [t]


def sheaf_triples(seed=DEFAULT_SEED, count=500, max_elements=16):
    rng = random.Random(seed)
    pool = [D for D in corpus.lattice_corpus() if len(D) <= max_elements]
    for _ in range(count):
        D = rng.choice(pool)
        roll = rng.random()
        if roll < 0.1:
            S = identity_site(D.as_poset())
        elif roll < 0.3:
            S = fin_coverage(D)
        else:
            S = corpus.random_site(rng, D)
        P = S.carrier
        yield D, S, corpus.random_downset(rng, P), corpus.random_downset(rng, P)


def check_sheafification(seed=DEFAULT_SEED, count=500) -> list:
    laws = Tally("closure-operator-laws")
    meets = Tally("preserves-meets")
    for D, S, F, G in sheaf_triples(seed, count):
        P = S.carrier

        def w(D=D, S=S, F=F, G=G):
            return {"lattice": _lattice_doc(D),
                    "coverings": [{"target": t, "family": f} for t, f in S.describe()],
                    "F": P.names(F), "G": P.names(G)}

        def law():
            aF, aFG = sheafify(S, F).mask, sheafify(S, F | G).mask
            return (F & ~aF == 0                                  # extensive
                    and sheafify(S, aF).mask == aF                # idempotent
                    and aF & ~aFG == 0                            # monotone
                    and is_sheaf(S, aF) and P.is_downset(aF))
        laws.run(law, w)
        meets.run(lambda: sheafify(S, F & G).mask
                  == sheafify(S, F).mask & sheafify(S, G).mask, w)
    return [laws, meets]


def check_fin_reference(seed=DEFAULT_SEED, count=200) -> list:
    t = Tally("fin-sheaf-matches-join-closure")
    rng = random.Random(seed)
    pool = [D for D in corpus.lattice_corpus() if len(D) <= 16]
    for _ in range(count):
        D = rng.choice(pool)
        S = fin_coverage(D)
        F = corpus.random_downset(rng, S.carrier)
        t.run(lambda: is_sheaf(S, F) == fin_sheaf_by_joins(D, F),
              lambda D=D, F=F: {"lattice": _lattice_doc(D), "F": S.carrier.names(F)})
    return [t]


# valuations and the ring ---------------------------------------------------

def check_valuations(lattices, seed=DEFAULT_SEED, per_lattice=100) -> list:
    rng = random.Random(seed)
    t = Tally("factor-reproduces-valuation")
    groups = (AbGroup(1), AbGroup(0, (6,)))
    for D in lattices:
        M = motive_module(D)
        for A in groups:
            for _ in range(per_lattice):
                v, weights = corpus.random_valuation(rng, D, A)

                def case():
                    h = factor_valuation(M, v)
                    # the hom on the point basis is forced: it must be the weights
                    forced = [tuple(row[p] for row in h.matrix) for p in range(M.rank)]
                    return ([A.reduce(c) for c in forced] == weights
                            and all(h.apply(M.mu_univ[u]) == v.values[u] for u in range(len(D))))
                t.run(case, lambda D=D, v=v, A=A: {"lattice": _lattice_doc(D),
                                                   "target": A.to_json(),
                                                   "values": [list(x) for x in v.values]})
    return [t]


def check_ring(lattices) -> list:
    t = Tally("ring-laws")
    for D in lattices:
        t.run(lambda: ring_structure(motive_module(D)).ok, lambda D=D: _lattice_doc(D))
    return [t]


def check_functoriality(seed=DEFAULT_SEED, count=100, max_n=4) -> list:
    """``M(g ∘ f) = M(g) M(f)`` on random composable preimage homs."""
    rng = random.Random(seed)
    t = Tally("motive-functor")
    posets = corpus.all_posets(max_n)
    done = 0
    while done < count:
        P, Q, R = (rng.choice(posets) for _ in range(3))
        f = corpus.random_monotone_map(rng, Q, P)
        g = corpus.random_monotone_map(rng, R, Q)
        if f is None or g is None:
            continue
        done += 1
        hf = corpus.preimage_hom(f, Q, P)   # O(P) -> O(Q)
        hg = corpus.preimage_hom(g, R, Q)   # O(Q) -> O(R)
        t.run(lambda: motive_hom(hf.then(hg)) == _mul(motive_hom(hg), motive_hom(hf)),
              lambda: {"P": _poset_doc(P), "Q": _poset_doc(Q), "R": _poset_doc(R),
                       "f": list(f), "g": list(g)})
    return [t]


def _mul(a, b):
    if not a or not b or not b[0]:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    return matmul(a, b)


# profinite -----------------------------------------------------------------

def check_profinite(seed=DEFAULT_SEED, systems=20, elements=500) -> list:
    rng = random.Random(seed)
    ranks = Tally("function-rank-equals-size")
    motives = Tally("motives-vs-continuous")
    normal = Tally("colimit-normal-forms")
    funcs = Tally("function-normal-forms")
    for _ in range(systems):
        sys = corpus.random_system(rng, depth=rng.randint(1, 3), max_size=5)
        w = lambda sys=sys: sys.to_json()
        C = continuous_functions(sys)
        ranks.run(lambda: all(C.group_at(i).rank == sys.size(i)
                              for i in range(len(sys.stages))), w)
        motives.run(lambda: motives_vs_continuous(sys).ok, w)
        B = colimit_boolean(sys)
        deep = sys.depth
        for _ in range(elements):
            i = rng.randint(0, deep)
            a = B.element(i, rng.randrange(1 << sys.size(i)))
            j = rng.randint(0, deep)
            b = B.element(j, rng.randrange(1 << sys.size(j)))

            def case(a=a, b=b):
                # equality by normal form agrees with equality at the deepest stage
                same = B.lift(a, deep) == B.lift(b, deep)
                ok = (a == b) == same
                ok &= B.normalize(a) == a
                ok &= B.meet(a, B.complement(a)) == B.bottom()
                ok &= B.join(a, B.complement(a)) == B.top()
                ok &= B.lift(B.join(a, b), deep) == B.lift(a, deep) | B.lift(b, deep)
                ok &= B.complement(B.join(a, b)) == B.meet(B.complement(a), B.complement(b))
                ok &= B.complement(B.meet(a, b)) == B.join(B.complement(a), B.complement(b))
                return ok
            normal.run(case, lambda a=a, b=b, w=w: {"system": w(),
                                                    "a": [a.stage, a.payload],
                                                    "b": [b.stage, b.payload]})
            vals = [rng.randint(-2, 2) for _ in range(sys.size(i))]

            def fcase(i=i, vals=vals):
                e = C.element(i, vals)
                lifted = C.lift(e, deep)
                again = C.normalize(C.element(deep, [x[0] for x in lifted]))
                return again == e and C.add(e, C.neg(e)) == C.zero()
            funcs.run(fcase, lambda i=i, vals=vals, w=w: {"system": w(), "stage": i,
                                                          "values": vals})
    return [ranks, motives, normal, funcs]


def check_partitions(max_size=6) -> list:
    t = Tally("partitions-bell")
    for n in range(max_size + 1):
        t.run(lambda n=n: finite_partitions([f"x{k}" for k in range(n)]).ok,
              lambda n=n: {"size": n})
    return [t]


# ktheory -------------------------------------------------------------------

def check_routes(lattices) -> list:
    t = Tally("three-routes-agree")
    s = Tally("sphere-window-3-chain")
    for D in lattices:
        for prof in standard_profiles():
            t.run(lambda: coherent_vs_constructible(D, prof).agree,
                  lambda D=D, prof=prof: {"lattice": _lattice_doc(D), "profile": prof.to_json()})
    chain3 = corpus.chain_lattice(2)

    def sphere():
        R = k_of_locally_coherent(chain3, sphere_profile())
        return (R.group(0) == AbGroup(2) and R.group(1) == AbGroup(0, (2, 2))
                and R.describe(2) == "unknown"
                and coherent_vs_constructible(chain3, sphere_profile()).agree)
    s.run(sphere, lambda: _lattice_doc(chain3))
    return [t, s]


def check_top_summand(lattices) -> list:
    """Adjoining a top adds exactly one copy of the coefficient group per degree."""
    t = Tally("top-adds-one-summand")
    prof = sphere_profile()
    for D in lattices:
        def case():
            before = k_of_locally_coherent(D, prof)
            after = k_of_locally_coherent(add_top(D).lattice, prof)
            return all(after.group(n) == before.group(n) + prof.group(n) for n in prof.degrees)
        t.run(case, lambda D=D: _lattice_doc(D))
    return [t]


def check_semiorthogonal(max_n=5) -> list:
    t = Tally("semiorthogonal-sum")
    profiles = standard_profiles() + [sphere_profile()]
    for P in corpus.all_posets(max_n):
        for prof in profiles:
            t.run(lambda: semiorthogonal_rank_check(P, prof).agree,
                  lambda P=P, prof=prof: {"poset": _poset_doc(P), "profile": prof.to_json()})
    return [t]


# scissors ------------------------------------------------------------------

def overlapping_intervals():
    g = GridGeometry(1, (("0", "1/2", "1", "3/2"),))
    P, Q = g.box(["0"], ["1"]), g.box(["1/2"], ["3/2"])
    return g, P, Q


def random_geometry(rng: random.Random) -> GridGeometry:
    dim = rng.choice((1, 2))
    axes = []
    for _ in range(dim):
        k = rng.randint(2, 5 if dim == 1 else 3)
        pts = set()
        while len(pts) < k + 1:
            pts.add(Fraction(rng.randint(0, 24), rng.choice((1, 2, 3))))
        axes.append(tuple(sorted(pts)))
    return GridGeometry(dim, tuple(axes))


def _atoms(cells_masks) -> int:
    """Number of cell classes with equal membership across generators, inside their union."""
    union = 0
    for m in cells_masks:
        union |= m
    sigs = set()
    for c in bits(union):
        sigs.add(tuple(m >> c & 1 for m in cells_masks))
    return len(sigs)


def check_scissors(seed=DEFAULT_SEED, pairs=100) -> list:
    rng = random.Random(seed)
    overlap = Tally("overlapping-intervals-rank")
    rel = Tally("disjoint-union-relation")
    atoms = Tally("rank-equals-atoms")
    closure = Tally("generated-closure-laws")

    def example():
        g, P, Q = overlapping_intervals()
        D = generated_sublattice(g, [P, Q])
        M, rep = polytope_module(D)
        return len(D) == 5 and rep.rank == 3 and overlap_ok(P, Q)
    overlap.run(example, lambda: {"dimension": 1, "cuts": [["0", "1/2", "1", "3/2"]]})
    for _ in range(pairs):
        g = random_geometry(rng)
        n = g.cell_count
        cells = list(range(n))
        rng.shuffle(cells)
        cut = rng.randint(1, n - 1)
        pmask = sum(1 << c for c in cells[:cut] if rng.random() < 0.7) or 1 << cells[0]
        qmask = sum(1 << c for c in cells[cut:] if rng.random() < 0.7) or 1 << cells[-1]
        extra = [rng.randrange(1, 1 << n) for _ in range(rng.randint(0, 2))]
        P, Q = g.polytope(list(bits(pmask))), g.polytope(list(bits(qmask)))
        gens = [P, Q] + [g.polytope(list(bits(m))) for m in extra]

        def w(g=g, gens=gens):
            return {"dimension": g.dimension,
                    "cuts": [[str(c) for c in axis] for axis in g.cuts],
                    "polytopes": [p.cells for p in gens]}
        D = generated_sublattice(g, gens)
        M, rep = polytope_module(D)
        iP, iQ = D.cells.index(P.mask), D.cells.index(Q.mask)
        rel.run(lambda: scissors_relation(M, iP, iQ)
                and (P | Q).measure() == P.measure() + Q.measure(), w)
        atoms.run(lambda: rep.rank == _atoms([p.mask for p in gens]), w)

        def closed(g=g, gens=gens, D=D):
            fewer = set(generated_sublattice(g, gens[:1]).cells)
            again = generated_sublattice(g, [g.polytope(list(bits(m))) for m in D.cells])
            return fewer <= set(D.cells) and again.cells == D.cells
        closure.run(closed, w)
    return [overlap, rel, atoms, closure]


def overlap_ok(P, Q) -> bool:
    return (P & Q).measure() == Fraction(1, 2)


# suites --------------------------------------------------------------------

def run_suite(name: str, seed: int = DEFAULT_SEED, max_n: int = 5, random_count: int = 200
              ) -> SuiteReport:
    if name == "birkhoff":
        checks = check_birkhoff(seed, max_n, random_count)
    elif name == "freeness":
        base = corpus.lattice_corpus(max_n)
        lattices = base + corpus.random_lattices(random.Random(seed), random_count)
        checks = (check_free(lattices) + check_rank_oracle(lattices) + check_split(base)
                  + check_booleanization(base))
    elif name == "sheaf":
        base = corpus.lattice_corpus(max_n)
        checks = (check_basis_theorem(base) + check_sheafification(seed)
                  + check_fin_reference(seed))
    elif name == "valuation":
        base = corpus.lattice_corpus(max_n)
        checks = check_valuations(base, seed) + check_ring(base) + check_functoriality(seed)
    elif name == "profinite":
        checks = check_profinite(seed) + check_partitions()
    elif name == "ktheory-routes":
        base = corpus.lattice_corpus(max_n)
        checks = check_routes(base) + check_top_summand(base) + check_semiorthogonal(max_n)
    elif name == "scissors":
        checks = check_scissors(seed)
    else:
        raise ValidationError(f"unknown suite {name!r}; expected one of "
                              f"{', '.join(SUITES + ('all',))}", name)
    return SuiteReport(name, seed, checks)


def run_all(seed: int = DEFAULT_SEED, max_n: int = 5, random_count: int = 200) -> list:
    return [run_suite(s, seed, max_n, random_count) for s in SUITES]
