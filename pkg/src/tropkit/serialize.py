"""JSON encodings.  Rationals travel as strings ("p/q"), never as floats."""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from .chow import ChowComplexData, RealizationCertificate
from .cycles import BalanceReport, WeightedComplex
from .hypersurface import InitialForm, TropicalPolynomial
from .polyhedra import Polyhedron, PolyhedralComplex
from .valued import ValuedScalar
from .weights import (AdmissibleConditionSystem, Equality, HeightedConfiguration, Inequality,
                      WeightComplexStructure)

SCHEMA = "tropkit/1"


class SchemaError(ValueError):
    pass


def rat(x) -> str:
    if x == math.inf:
        return "inf"
    return str(Fraction(x))


def parse_rat(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SchemaError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"bad rational {s!r}") from e


def parse_val(s):
    if s == "inf":
        return math.inf
    return parse_rat(s)


def vec(v) -> list[str]:
    return [rat(x) for x in v]


def ints(v) -> list[int]:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise SchemaError(f"expected a list of integers, got {v!r}")
    return list(v)


def _need(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise SchemaError(f"field {key!r} has the wrong type")
    return val


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def check_schema(obj):
    if not isinstance(obj, dict):
        raise SchemaError("top level must be an object")
    if "schema" in obj and obj["schema"] != SCHEMA:
        raise SchemaError(f"unsupported schema {obj['schema']!r}")
    return obj


# ---------------------------------------------------------------------------
# scalars and polynomials

def scalar_to_json(s: ValuedScalar) -> dict:
    return {"terms": [{"exp": rat(e), "coeff": rat(c)} for e, c in s.terms.items()]}


def scalar_from_json(obj) -> ValuedScalar:
    if isinstance(obj, (str, int)) and not isinstance(obj, bool):
        return ValuedScalar.constant(parse_rat(obj))
    terms = _need(obj, "terms", list)
    out: dict = {}
    for t in terms:
        e, c = parse_rat(_need(t, "exp")), parse_rat(_need(t, "coeff"))
        out[e] = out.get(e, Fraction(0)) + c
    return ValuedScalar(out)


def polynomial_to_json(f: TropicalPolynomial) -> dict:
    return {"schema": SCHEMA, "num_vars": f.num_vars,
            "terms": [{"exp": list(u), "coeff": scalar_to_json(c)} for u, c in f.terms.items()]}


def polynomial_from_json(obj) -> TropicalPolynomial:
    check_schema(obj)
    n = _need(obj, "num_vars", int)
    terms: dict = {}
    for t in _need(obj, "terms", list):
        u = tuple(ints(_need(t, "exp")))
        if len(u) != n:
            raise SchemaError(f"exponent {list(u)} does not have {n} entries")
        if u in terms:
            raise SchemaError(f"repeated exponent {list(u)}")
        terms[u] = scalar_from_json(_need(t, "coeff"))
    return TropicalPolynomial(n, terms)


def initial_form_to_json(inf: InitialForm, w) -> dict:
    return {"schema": SCHEMA, "w": vec(w), "monomial": inf.is_monomial,
            "terms": [{"exp": list(u), "coeff": rat(c)} for u, c in sorted(inf.terms.items())]}


# ---------------------------------------------------------------------------
# polyhedra and complexes

def polyhedron_to_json(p: Polyhedron) -> dict:
    return {"ineqs": [{"a": vec(a), "b": rat(b)} for a, b in p.facets],
            "eqs": [{"a": vec(a), "b": rat(b)} for a, b in p.equalities],
            "vertices": [vec(v) for v in p.vertices],
            "rays": [vec(r) for r in p.rays],
            "lineality": [vec(r) for r in p.lineality],
            "dim": p.dim}


def polyhedron_from_json(obj, n: int) -> Polyhedron:
    if "vertices" in obj and "ineqs" not in obj:
        verts = [[parse_rat(x) for x in v] for v in obj["vertices"]]
        rays = [[parse_rat(x) for x in v] for v in obj.get("rays", [])]
        lin = [[parse_rat(x) for x in v] for v in obj.get("lineality", [])]
        for v in verts + rays + lin:
            if len(v) != n:
                raise SchemaError("point has the wrong dimension")
        rays = rays + lin + [[-x for x in v] for v in lin]
        return Polyhedron.from_v(n, verts, rays)

    def half(h):
        a = [parse_rat(x) for x in _need(h, "a", list)]
        if len(a) != n:
            raise SchemaError("constraint has the wrong dimension")
        return a, parse_rat(_need(h, "b"))
    ineqs = [half(h) for h in obj.get("ineqs", [])]
    eqs = [half(h) for h in obj.get("eqs", [])]
    return Polyhedron.from_h(n, ineqs, eqs)


def complex_to_json(c: PolyhedralComplex, with_faces: bool = True) -> dict:
    ids = c.ids
    cells = []
    for p in c:
        d = polyhedron_to_json(p)
        d["id"] = ids[p.key]
        cells.append(d)
    out = {"ambient_dim": c.ambient_dim, "cells": cells}
    if with_faces:
        out["faces"] = sorted(([ids[a], ids[b]] for a, b in c.face_relation if a != b),
                              key=lambda pr: (int(pr[0][1:]), int(pr[1][1:])))
    return out


def _cells_from_json(obj):
    n = _need(obj, "ambient_dim", int)
    cells = _need(obj, "cells", list)
    parsed = []
    for i, cobj in enumerate(cells):
        cid = cobj.get("id", f"c{i}") if isinstance(cobj, dict) else None
        if cid is None:
            raise SchemaError("cells must be objects")
        p = polyhedron_from_json(cobj, n)
        if p.is_empty:
            raise SchemaError(f"cell {cid} is empty")
        parsed.append((cid, p))
    return n, parsed


def complex_from_json(obj) -> PolyhedralComplex:
    check_schema(obj)
    n, parsed = _cells_from_json(obj)
    return PolyhedralComplex(n, [p for _, p in parsed])


def cycle_to_json(c: WeightedComplex) -> dict:
    out = complex_to_json(c.complex)
    ids = c.complex.ids
    out["dim"] = c.dim
    out["weights"] = {ids[k]: m for k, m in c.weights.items()}
    out["schema"] = SCHEMA
    return out


def cycle_from_json(obj) -> WeightedComplex:
    """Parse a cycle; a command result wrapping it under ``"cycle"`` is accepted too."""
    check_schema(obj)
    if "cycle" in obj and "cells" not in obj:
        obj = check_schema(obj["cycle"])
    n, parsed = _cells_from_json(obj)
    weights = _need(obj, "weights", dict)
    by_id = dict(parsed)
    if len(by_id) != len(parsed):
        raise SchemaError("duplicate cell ids")
    tops = []
    for cid, m in weights.items():
        if cid not in by_id:
            raise SchemaError(f"weight for unknown cell {cid}")
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise SchemaError(f"weight of {cid} must be a positive integer")
        tops.append((by_id[cid], m))
    dim = obj.get("dim")
    if dim is None:
        dim = max((p.dim for p, _ in tops), default=0)
    for p, _ in tops:
        if p.dim != dim:
            raise SchemaError("weighted cells must all have the stated dimension")
    try:
        return WeightedComplex.from_cells(n, tops, dim=dim)
    except ValueError as e:
        raise SchemaError(str(e)) from e


def balance_to_json(r: BalanceReport, c: WeightedComplex) -> dict:
    out = {"schema": SCHEMA, "balanced": r.balanced, "checked": r.checked}
    if not r.balanced:
        out["witness"] = {"cell": polyhedron_to_json(r.cell), "residual": list(r.residual)}
    return out


# ---------------------------------------------------------------------------
# configurations and weight complexes

def config_to_json(cfg: HeightedConfiguration) -> dict:
    out = {"schema": SCHEMA, "characters": [list(c) for c in cfg.characters],
           "heights": {str(i): rat(h) for i, h in enumerate(cfg.heights)}}
    if cfg.slots is not None:
        out["slots"] = {str(i): [rat(v) for v in s] for i, s in enumerate(cfg.slots)}
    return out


def config_from_json(obj) -> HeightedConfiguration:
    check_schema(obj)
    chars = [tuple(ints(c)) for c in _need(obj, "characters", list)]
    k = len(chars)

    def indexed(name):
        d = obj.get(name)
        if d is None:
            return None
        if isinstance(d, list):
            d = {str(i): v for i, v in enumerate(d)}
        if not isinstance(d, dict) or set(d) != {str(i) for i in range(k)}:
            raise SchemaError(f"{name} must be keyed by every character index")
        return [d[str(i)] for i in range(k)]
    slots = indexed("slots")
    heights = indexed("heights")
    try:
        if slots is not None:
            cfg = HeightedConfiguration.from_slots(chars, [[parse_val(v) for v in s] for s in slots])
            if heights is not None:
                hs = dict(zip(chars, (parse_val(h) for h in heights)))
                if any(hs[c] != h for c, h in zip(cfg.characters, cfg.heights)):
                    raise SchemaError("heights disagree with slot minima")
            return cfg
        if heights is None:
            raise SchemaError("need heights or slots")
        hs = [parse_val(h) for h in heights]
        keep = [(c, h) for c, h in zip(chars, hs) if h != math.inf]
        return HeightedConfiguration(tuple(c for c, _ in keep), tuple(h for _, h in keep))
    except SchemaError:
        raise
    except ValueError as e:
        raise SchemaError(str(e)) from e


def weight_complex_to_json(wc: WeightComplexStructure) -> dict:
    cx = wc.complex
    ids = cx.ids
    chars = wc.config.characters
    duality = {}
    for p in cx:
        f = wc.dual_face(p)
        duality[ids[p.key]] = {"characters": sorted(list(chars[i]) for i in f.characters),
                               "extremal": sorted(list(chars[i]) for i in f.extremal),
                               "dim": f.dim}
    return {"schema": SCHEMA, "config": config_to_json(wc.config), "complex": complex_to_json(cx),
            "duality": duality,
            "hull": [{"points": [vec(wc.hull.lifted[i]) for i in sorted(f.extremal)],
                      "characters": sorted(list(chars[i]) for i in f.characters)}
                     for f in wc.hull.facets]}


def conditions_to_json(s: AdmissibleConditionSystem) -> dict:
    chi, v = s.normalization
    return {"schema": SCHEMA,
            "normalization": {"character": list(chi), "value": rat(v)},
            "equalities": [{"character": list(e.character), "value": rat(e.value)} for e in s.equalities],
            "inequalities": [{"character": list(q.character), "slot": q.slot, "bound": rat(q.bound)}
                             for q in s.inequalities],
            "slot_counts": [{"character": list(c), "count": r} for c, r in sorted(s.slot_counts.items())]}


def conditions_from_json(obj) -> AdmissibleConditionSystem:
    check_schema(obj)
    norm = _need(obj, "normalization", dict)
    eqs = [Equality(tuple(ints(_need(e, "character"))), parse_rat(_need(e, "value")))
           for e in _need(obj, "equalities", list)]
    ineqs = [Inequality(tuple(ints(_need(q, "character"))), _need(q, "slot", int), parse_rat(_need(q, "bound")))
             for q in _need(obj, "inequalities", list)]
    counts = {tuple(ints(_need(c, "character"))): _need(c, "count", int) for c in obj.get("slot_counts", [])}
    return AdmissibleConditionSystem((tuple(ints(_need(norm, "character"))), parse_rat(_need(norm, "value"))),
                                     eqs, ineqs, counts)


def condition_check_to_json(chk) -> dict:
    out: dict[str, Any] = {"satisfied": chk.ok}
    w = chk.witness
    if isinstance(w, Equality):
        out["witness"] = {"kind": "equality", "character": list(w.character), "observed": rat(w.value)}
    elif isinstance(w, Inequality):
        out["witness"] = {"kind": "inequality", "character": list(w.character), "slot": w.slot,
                          "observed": rat(w.bound)}
    return out


def valuations_from_json(obj) -> dict:
    """``{"values": [{"character": [...], "slots": ["p/q" | "inf", ...]}]}``."""
    check_schema(obj)
    out = {}
    for e in _need(obj, "values", list):
        out[tuple(ints(_need(e, "character")))] = [parse_val(v) for v in _need(e, "slots", list)]
    return out


# ---------------------------------------------------------------------------
# Chow data and certificates

def chow_to_json(cc: ChowComplexData) -> dict:
    out = {"schema": SCHEMA, "source": cc.source, "complex": complex_to_json(cc.complex)}
    ids = cc.complex.ids
    out["samples"] = {ids[p.key]: vec(p.relative_interior_point()) for p in cc.complex}
    return out


def certificate_to_json(cert: RealizationCertificate) -> dict:
    out: dict[str, Any] = {"schema": SCHEMA, "verdict": cert.verdict, "mode": cert.mode,
                           "samples": [], "modes_agree": cert.modes_agree}
    for r in sorted(cert.samples, key=lambda r: int(r.cell[1:])):
        out["samples"].append({"cell": r.cell, "w": vec(r.w), "cond1": r.cond1,
                               "cond2": {"observed": r.observed, "expected": r.expected}})
    if cert.sampled_verdict is not None:
        out["sampled"] = {"verdict": "accept" if cert.sampled_verdict else "reject",
                          "target_balanced": cert.balanced}
        if cert.degree is not None:
            out["sampled"]["newton_polytope"] = {
                "observed": [vec(v) for v in cert.degree.observed],
                "expected": [vec(v) for v in cert.degree.expected]}
    if cert.direct is not None:
        out["direct"] = {"verdict": "accept" if cert.direct_verdict else "reject",
                         "support_equal": cert.direct.support_equal,
                         "weight_mismatches": [{"w": vec(w), "observed": a, "expected": b}
                                               for w, a, b in cert.direct.weight_mismatches]}
    return out
