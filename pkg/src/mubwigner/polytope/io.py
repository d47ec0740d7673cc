"""JSON forms of polytopes; rationals travel as "a/b" strings."""
from __future__ import annotations

from .rational import format_rational, parse_rational
from .types import HPolytope, VPolytope


def _row(a, b) -> dict:
    return {"a": [format_rational(x) for x in a], "b": format_rational(b)}


def h_to_json(h: HPolytope) -> dict:
    return {
        "type": "H",
        "dim": h.dim,
        "inequalities": [_row(a, b) for a, b in h.inequalities],
        "equalities": [_row(e, f) for e, f in h.equalities],
    }


def h_from_json(obj: dict) -> HPolytope:
    if obj.get("type", "H") != "H":
        raise ValueError("not an H-polytope document")
    ineq = [([parse_rational(x) for x in r["a"]], parse_rational(r["b"])) for r in obj["inequalities"]]
    eq = [([parse_rational(x) for x in r["a"]], parse_rational(r["b"])) for r in obj.get("equalities", [])]
    return HPolytope(int(obj["dim"]), ineq, eq)


def v_to_json(v: VPolytope) -> dict:
    return {
        "type": "V",
        "dim": v.dim,
        "vertices": [[format_rational(x) for x in p] for p in v.vertices],
        "infeasible": v.infeasible,
    }


def v_from_json(obj: dict) -> VPolytope:
    if obj.get("type", "V") != "V":
        raise ValueError("not a V-polytope document")
    verts = [[parse_rational(x) for x in p] for p in obj["vertices"]]
    return VPolytope(int(obj["dim"]), verts, infeasible=bool(obj.get("infeasible", False)))
