"""JSON schemas (``schemaVersion`` 1) for every input and output type."""
from __future__ import annotations

import json
from fractions import Fraction

from .errors import MalformedInput
from .ktheory import CoeffProfile, KResult
from .lattice import FinDistLattice, LatticeHom, from_tables, hom_from_labels, lattice_from_irr
from .motives import ValuationData
from .order import DownSet, Poset, bits, validate_poset
from .profinite import InverseSystem, validate_system
from .scissors import GridGeometry, GridPolytope
from .sites import FinSite, fin_coverage, validate_site
from .snf import AbGroup

SCHEMA_VERSION = 1


def _check_version(doc):
    if not isinstance(doc, dict):
        raise MalformedInput(f"expected a JSON object, got {type(doc).__name__}")
    v = doc.get("schemaVersion", SCHEMA_VERSION)
    if v != SCHEMA_VERSION:
        raise MalformedInput(f"unsupported schemaVersion {v!r}", v)
    return doc


def _field(doc, key, kind=None):
    try:
        val = doc[key]
    except (KeyError, TypeError):
        raise MalformedInput(f"missing field {key!r}", key) from None
    if kind is not None and not isinstance(val, kind):
        raise MalformedInput(f"field {key!r} must be {kind.__name__}", key)
    return val


def versioned(doc: dict) -> dict:
    return {"schemaVersion": SCHEMA_VERSION, **doc}


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"malformed JSON: {e.msg} at line {e.lineno} column {e.colno}",
                             {"line": e.lineno, "column": e.colno}) from None


def load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise MalformedInput(f"cannot read {path}: {e.strerror}", path) from None
    return loads(text)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# posets --------------------------------------------------------------------

def poset_from_json(doc) -> Poset:
    _check_version(doc)
    elements = _field(doc, "elements", list)
    leq = doc.get("leq", [])
    if not isinstance(leq, list) or any(not isinstance(p, list) or len(p) != 2 for p in leq):
        raise MalformedInput("'leq' must be a list of [lower, upper] pairs", "leq")
    if any(not isinstance(e, str) for e in elements):
        raise MalformedInput("poset elements must be strings", "elements")
    return validate_poset(elements, [tuple(p) for p in leq])


def poset_to_json(P: Poset) -> dict:
    pairs = [[P.elements[i], P.elements[j]] for i in range(len(P)) for j in range(len(P))
             if i != j and P.leq_idx(i, j)]
    return versioned({"elements": list(P.elements), "leq": pairs})


def downset_from_json(doc, P: Poset) -> DownSet:
    members = doc if isinstance(doc, list) else _field(_check_version(doc), "members", list)
    return DownSet(P, P.mask_of(members))


def downset_to_json(F: DownSet) -> dict:
    return versioned({"members": F.poset.names(F.mask)})


# lattices ------------------------------------------------------------------

def lattice_from_json(doc) -> FinDistLattice:
    """``{posetOfIrreducibles}`` or ``{elements, join, meet, bottom, top}``.

    ``"lowerBounded": true`` marks a lattice whose top is not part of the structure.
    """
    _check_version(doc)
    has_top = not doc.get("lowerBounded", False)
    if "posetOfIrreducibles" in doc:
        D = lattice_from_irr(poset_from_json(doc["posetOfIrreducibles"]))
    elif "elements" in doc and "join" in doc:
        elements = _field(doc, "elements", list)
        D, _ = from_tables(elements, _field(doc, "join"), _field(doc, "meet"),
                           _field(doc, "bottom"), doc.get("top"))
    else:
        raise MalformedInput("lattice needs 'posetOfIrreducibles' or 'elements'+'join'+'meet'")
    return D if has_top else D.as_lower_bounded()


def lattice_to_json(D: FinDistLattice) -> dict:
    return versioned({"posetOfIrreducibles": poset_to_json(D.irr),
                      "elements": list(D.labels),
                      "order": [[D.labels[a], D.labels[b]] for a in range(len(D))
                                for b in range(len(D)) if a != b and D.leq(a, b)],
                      "lowerBounded": not D.has_top})


def hom_from_json(doc) -> LatticeHom:
    _check_version(doc)
    S = lattice_from_json(_field(doc, "source", dict))
    T = lattice_from_json(_field(doc, "target", dict))
    mapping = _field(doc, "map", dict)
    return hom_from_labels(S, T, mapping, bounded=bool(doc.get("bounded", False)))


# sites ---------------------------------------------------------------------

def site_from_json(doc) -> FinSite:
    """``{poset, coverings}`` or ``{lattice}`` for the finite-join coverage."""
    _check_version(doc)
    if "lattice" in doc:
        return fin_coverage(lattice_from_json(doc["lattice"]))
    P = poset_from_json(_field(doc, "poset", dict))
    covs = []
    for c in _field(doc, "coverings", list):
        covs.append((_field(c, "target"), _field(c, "family", list)))
    return validate_site(P, covs)


def site_to_json(S: FinSite) -> dict:
    return versioned({"poset": poset_to_json(S.carrier),
                      "coverings": [{"target": t, "family": fam} for t, fam in S.describe()]})


# groups, valuations, profiles ----------------------------------------------

def group_from_json(doc) -> AbGroup:
    if not isinstance(doc, dict):
        raise MalformedInput("group must be an object with 'rank' and 'torsion'")
    try:
        rank = int(doc.get("rank", 0))
        torsion = [int(d) for d in doc.get("torsion", [])]
    except (TypeError, ValueError):
        raise MalformedInput("group rank and torsion must be integers") from None
    if rank < 0 or any(d < 0 for d in torsion):
        raise MalformedInput("group rank and torsion orders must be non-negative")
    return AbGroup.from_cyclic([0] * rank + torsion)


def valuation_from_json(doc, D: FinDistLattice) -> ValuationData:
    _check_version(doc)
    A = group_from_json(_field(doc, "target", dict))
    raw = _field(doc, "values", dict)
    values = {}
    for k, v in raw.items():
        coords = [v] if isinstance(v, int) else v
        if not isinstance(coords, list) or len(coords) != A.ngens \
                or any(not isinstance(c, int) for c in coords):
            raise MalformedInput(f"value of {k!r} must have {A.ngens} integer coordinates", k)
        values[k] = coords
    return ValuationData.from_map(D, A, values)


def profile_from_json(doc) -> CoeffProfile:
    _check_version(doc)
    window = _field(doc, "window", list)
    if len(window) != 2 or any(not isinstance(x, int) for x in window):
        raise MalformedInput("'window' must be [lo, hi]", "window")
    groups = {}
    for n, g in doc.get("groups", {}).items():
        try:
            deg = int(n)
        except ValueError:
            raise MalformedInput(f"degree {n!r} is not an integer", n) from None
        groups[deg] = group_from_json(g)
    return CoeffProfile(str(doc.get("label", "")), tuple(window), groups)


def kresult_to_json(R: KResult) -> dict:
    return versioned(R.to_json())


# profinite -----------------------------------------------------------------

def system_from_json(doc) -> InverseSystem:
    _check_version(doc)
    stages = [[str(x) for x in st] for st in _field(doc, "stages", list)]
    transitions = [{str(k): str(v) for k, v in t.items()}
                   for t in doc.get("transitions", [])]
    return validate_system(stages, transitions)


# scissors ------------------------------------------------------------------

def geometry_from_json(doc) -> GridGeometry:
    _check_version(doc)
    dim = _field(doc, "dimension", int)
    try:
        cuts = tuple(tuple(Fraction(str(c)) for c in axis) for axis in _field(doc, "cuts", list))
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise MalformedInput(f"bad cut coordinate: {e}") from None
    return GridGeometry(dim, cuts)


def polytopes_from_json(doc, g: GridGeometry) -> list:
    """``polytopes``: lists of cell indices or ``{"lo": [...], "hi": [...]}`` boxes."""
    out = []
    for p in doc.get("polytopes", []):
        if isinstance(p, dict):
            out.append(g.box([Fraction(str(x)) for x in _field(p, "lo", list)],
                             [Fraction(str(x)) for x in _field(p, "hi", list)]))
        elif isinstance(p, list) and all(isinstance(c, int) for c in p):
            out.append(g.polytope(p))
        else:
            raise MalformedInput("polytope must be a cell index list or a box", p)
    return out


def polytope_to_json(p: GridPolytope) -> dict:
    return {"cells": p.cells, "label": p.label, "measure": str(p.measure())}


def mask_names(P: Poset, mask: int) -> list:
    return [P.elements[i] for i in bits(mask)]
