"""Batch command-line front end.

Exit codes: 0 success, 2 validation error (error JSON on stdout), 3 failed
verification.  Output is pretty JSON by default and byte-identical for
identical inputs and seed.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import jsonio
from .errors import FinstoneError, MalformedInput, ValidationError, VerificationError
from .ktheory import coherent_vs_constructible, sphere_profile, standard_profiles
from .lattice import birkhoff_opens, birkhoff_points, booleanize
from .motives import (booleanization_iso, certify_free, factor_valuation, motive_module,
                      point_basis_iso)
from .profinite import colimit_boolean, continuous_functions, finite_partitions, motives_vs_continuous
from .scissors import generated_sublattice, grid_lattice, polytope_module
from .sites import basis_theorem, enumerate_sheaves, sheafify
from .verify import DEFAULT_SEED, SUITES, run_all, run_suite

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 2, 3

PROFILES = {p.label: p for p in standard_profiles()}
PROFILES["sphere"] = sphere_profile()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInput(f"{self.prog}: {message}")


def _lattice(path):
    return jsonio.lattice_from_json(jsonio.load(path))


# verbs ---------------------------------------------------------------------

def cmd_points(a):
    D = _lattice(a.input)
    P = birkhoff_points(D)
    return {"count": len(P), "points": jsonio.poset_to_json(P)}


def cmd_opens(a):
    P = jsonio.poset_from_json(jsonio.load(a.input))
    D = birkhoff_opens(P, budget=a.budget)
    return {"count": len(D), "lattice": jsonio.lattice_to_json(D)}


def cmd_sheaves(a):
    doc = jsonio.load(a.input)
    S = jsonio.site_from_json(doc)
    sheaves = enumerate_sheaves(S, a.budget)
    out = {"count": len(sheaves), "sheaves": [f.members for f in sheaves]}
    if "lattice" in doc:
        rep = basis_theorem(jsonio.lattice_from_json(doc["lattice"]), a.budget)
        out["basisTheorem"] = {"latticeSize": rep.lattice_size, "allPrincipal": rep.all_principal,
                               "ok": rep.ok}
    return out


def cmd_sheafify(a):
    S = jsonio.site_from_json(jsonio.load(a.input))
    F = jsonio.downset_from_json(jsonio.load(a.extra), S.carrier)
    return jsonio.downset_to_json(sheafify(S, F))


def cmd_motives(a):
    M = motive_module(_lattice(a.input))
    certify_free(M)
    return M.to_json()


def cmd_basis(a):
    D = _lattice(a.input)
    M = motive_module(D)
    rep = certify_free(M)
    iso = point_basis_iso(D, M)
    return {"rank": rep.rank, "snfDiag": list(rep.diag),
            "basis": M.basis_combinations(),
            "pointIndicatorDeterminant": iso.determinant}


def cmd_booleanize(a):
    D = _lattice(a.input)
    B, h = booleanize(D)
    rep = booleanization_iso(D)
    return {"elements": list(B.labels),
            "map": {D.labels[u]: B.labels[h(u)] for u in range(len(D))},
            "motiveMatrix": rep.matrix, "determinant": rep.determinant}


def cmd_valuation_factor(a):
    D = _lattice(a.input)
    v = jsonio.valuation_from_json(jsonio.load(a.extra), D)
    M = motive_module(D)
    h = factor_valuation(M, v)
    return {"target": v.target.to_json(), "basis": M.basis_combinations(),
            "matrix": h.matrix, "unique": h.unique}


def cmd_ktheory(a):
    D = _lattice(a.input)
    if a.extra:
        profiles = [jsonio.profile_from_json(jsonio.load(a.extra))]
    else:
        profiles = list(PROFILES.values())
    out = []
    for prof in profiles:
        rep = coherent_vs_constructible(D, prof)
        res = rep.result.to_json()
        res["agree"] = rep.agree
        out.append(res)
    return {"results": out}


def cmd_scissors(a):
    doc = jsonio.load(a.input)
    g = jsonio.geometry_from_json(doc)
    gens = jsonio.polytopes_from_json(doc, g)
    D = generated_sublattice(g, gens) if gens else grid_lattice(g)
    M, rep = polytope_module(D)
    return {"cells": [{"name": g.cell_name(k), "bounds": [[str(lo), str(hi)]
                                                        for lo, hi in g.cell_bounds(k)]}
                      for k in range(g.cell_count)],
            "generators": [jsonio.polytope_to_json(p) for p in gens],
            "latticeSize": len(D), **rep.to_json()}


def cmd_profinite(a):
    if a.partitions is not None:
        rep = finite_partitions([f"x{k}" for k in range(a.partitions)])
        return {"size": rep.size, "partitions": len(rep.partitions), "bellOk": rep.bell_ok,
                "refinementPairs": rep.refinement_pairs,
                "powersetColimitOk": rep.powerset_colimit_ok, "betaPoints": rep.beta_points}
    if a.input is None:
        raise MalformedInput("profinite needs a system file or --partitions N")
    sys_ = jsonio.system_from_json(jsonio.load(a.input))
    C = continuous_functions(sys_)
    B = colimit_boolean(sys_)
    rep = motives_vs_continuous(sys_)
    if not rep.ok:
        raise VerificationError("M(P(X_i)) and C(X_i; Z) disagree", rep.to_json())
    return {"system": sys_.to_json(),
            "functionGroups": [str(C.group_at(i)) for i in range(len(sys_.stages))],
            "clopenCounts": [1 << sys_.size(i) for i in range(len(sys_.stages))],
            "deepestTop": B.members(B.top()),
            "comparison": rep.to_json()}


def cmd_verify(a):
    if a.input == "all":
        reports = run_all(a.seed, a.max, a.random)
    else:
        reports = [run_suite(a.input, a.seed, a.max, a.random)]
    ok = all(r.ok for r in reports)
    out = {"status": "pass" if ok else "fail", "seed": a.seed,
           "suites": [r.to_json() for r in reports]}
    return out, (EXIT_OK if ok else EXIT_FAILED)


VERBS = {
    "points": (cmd_points, "lattice JSON -> its join-irreducible points"),
    "opens": (cmd_opens, "poset JSON -> lattice of downsets"),
    "sheaves": (cmd_sheaves, "site JSON -> all propositional sheaves"),
    "sheafify": (cmd_sheafify, "site JSON + downset JSON -> least sheaf"),
    "motives": (cmd_motives, "lattice JSON -> module of motives"),
    "basis": (cmd_basis, "lattice JSON -> certified point basis of M(D)"),
    "booleanize": (cmd_booleanize, "lattice JSON -> Booleanization"),
    "valuation-factor": (cmd_valuation_factor, "lattice JSON + valuation JSON -> factoring hom"),
    "ktheory": (cmd_ktheory, "lattice JSON [+ profile JSON] -> graded groups"),
    "verify": (cmd_verify, f"run a property suite: {', '.join(SUITES + ('all',))}"),
    "scissors": (cmd_scissors, "geometry JSON -> polytope module"),
    "profinite": (cmd_profinite, "inverse system JSON -> colimit and function groups"),
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="finstone", description="Finite distributive lattices, sheaves "
                "and modules of motives.")
    p.add_argument("verb", choices=sorted(VERBS), metavar="verb",
                   help="one of: " + ", ".join(VERBS))
    p.add_argument("input", nargs="?", help="input JSON path (suite name for verify)")
    p.add_argument("extra", nargs="?", help="second input JSON path where needed")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--random", type=int, default=200, help="random cases per suite")
    p.add_argument("--max", type=int, default=5, help="exhaustive poset size bound")
    p.add_argument("--budget", type=int, default=None, help="enumeration cap")
    p.add_argument("--partitions", type=int, default=None,
                   help="profinite: check finite partitions of an n-element set")
    p.add_argument("--plain", action="store_true", help="aligned text instead of JSON")
    return p


def _flatten(doc, prefix=""):
    if isinstance(doc, dict):
        for k, v in doc.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(doc, list) and doc and all(isinstance(x, (dict, list)) for x in doc):
        for i, v in enumerate(doc):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, doc


def _table(rows) -> str:
    widths = [max(len(str(r[k])) for r in rows) for k in range(len(rows[0]))]
    return "".join("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() + "\n"
                   for r in rows)


def render_plain(doc) -> str:
    if "suites" in doc:
        rows = [("suite", "check", "cases", "failed")]
        for s in doc["suites"]:
            for c in s["checks"]:
                rows.append((s["suite"], c["check"], c["cases"], c["failed"]))
        return _table(rows) + f"status {doc['status']} (seed {doc['seed']})\n"
    rows = [(k, v if isinstance(v, str) else jsonio.json.dumps(v, ensure_ascii=False))
            for k, v in _flatten(doc)]
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def _needs(a, *names):
    for n in names:
        if getattr(a, n) is None:
            raise MalformedInput(f"{a.verb} needs an {n} argument", n)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    saved = os.environ.get("FINSTONE_BUDGET")
    try:
        return _run(argv, out)
    finally:
        # --budget must not outlive the call when run is used in-process
        if saved is None:
            os.environ.pop("FINSTONE_BUDGET", None)
        else:
            os.environ["FINSTONE_BUDGET"] = saved


def _run(argv, out) -> int:
    try:
        a = build_parser().parse_args(argv)
        if a.budget is not None:
            if a.budget < 1:
                raise MalformedInput("--budget must be positive", a.budget)
            os.environ["FINSTONE_BUDGET"] = str(a.budget)
        if a.verb in ("sheafify", "valuation-factor"):
            _needs(a, "input", "extra")
        elif a.verb != "profinite":
            _needs(a, "input")
        if a.verb == "verify" and a.input not in SUITES + ("all",):
            raise MalformedInput(f"unknown suite {a.input!r}", a.input)
        result = VERBS[a.verb][0](a)
        code = EXIT_OK
        if isinstance(result, tuple):
            result, code = result
        doc = jsonio.versioned(result)
        out.write(render_plain(doc) if a.plain else jsonio.dumps(doc))
        return code
    except ValidationError as e:
        out.write(jsonio.dumps(jsonio.versioned(e.to_json())))
        return EXIT_INVALID
    except VerificationError as e:
        out.write(jsonio.dumps(jsonio.versioned(e.to_json())))
        return EXIT_FAILED
    except FinstoneError as e:   # pragma: no cover - every subclass is one of the above
        out.write(jsonio.dumps(jsonio.versioned(e.to_json())))
        return EXIT_FAILED
    except (ValueError, TypeError, KeyError) as e:
        # shape errors inside nested input documents
        out.write(jsonio.dumps(jsonio.versioned(
            {"error": "MalformedInput", "message": str(e), "witness": None})))
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())

