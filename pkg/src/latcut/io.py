"""JSON encoding.  Rationals travel as "p/q" strings; every file carries a schema tag."""
from __future__ import annotations

import json
from fractions import Fraction

from . import exactgeo as eg
from .cgf import CornerTableau, Cut, MaxForm
from .errors import InputError
from .exactgeo import HPolyhedron, IntBox
from .groupfn import PwlComplexND, PwlPeriodic1D
from .latticefree import SFreeScene, SSpec, default_window

SCHEMA = 1


def q(x) -> str:
    return str(Fraction(x))


def qv(v) -> list:
    return [q(x) for x in v]


def parse_rat(x) -> Fraction:
    try:
        return eg.rat(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {x!r}") from exc


def parse_vec(v) -> tuple:
    if not isinstance(v, list):
        raise InputError(f"expected a list, got {v!r}")
    return tuple(parse_rat(x) for x in v)


def _need(d: dict, key: str):
    if not isinstance(d, dict) or key not in d:
        raise InputError(f"missing field {key!r}")
    return d[key]


def dump(obj: dict) -> str:
    return json.dumps({"latcut_schema": SCHEMA, **obj}, indent=2, sort_keys=True) + "\n"


def load(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("top-level JSON value must be an object")
    v = data.get("latcut_schema", SCHEMA)
    if v != SCHEMA:
        raise InputError(f"unsupported schema version {v}")
    return data


# ---------------------------------------------------------------------------


def hpoly_to(P: HPolyhedron) -> dict:
    return {"dim": P.dim, "rows": [{"a": qv(a), "b": q(b)} for a, b in P.rows]}


def hpoly_from(d) -> HPolyhedron:
    dim = _need(d, "dim")
    rows = tuple((parse_vec(_need(r, "a")), parse_rat(_need(r, "b"))) for r in _need(d, "rows"))
    return HPolyhedron(int(dim), rows)


def box_to(B: IntBox) -> dict:
    return {"lower": list(B.lower), "upper": list(B.upper)}


def box_from(d) -> IntBox:
    return IntBox(tuple(int(x) for x in _need(d, "lower")), tuple(int(x) for x in _need(d, "upper")))


def sspec_to(S: SSpec) -> dict:
    return {"n": S.n, "b": qv(S.b), "Q": None if S.Q is None else hpoly_to(S.Q)}


def sspec_from(d) -> SSpec:
    Q = d.get("Q")
    return SSpec(int(_need(d, "n")), parse_vec(_need(d, "b")), None if Q is None else hpoly_from(Q))


def scene_to(sc: SFreeScene) -> dict:
    out = {"S": sspec_to(sc.S), "K": hpoly_to(sc.K), "window": box_to(sc.window)}
    if sc.kind:
        out["kind"] = sc.kind
    return out


def scene_from(d, window_radius: int | None = None) -> SFreeScene:
    S = sspec_from(_need(d, "S"))
    K = hpoly_from(_need(d, "K"))
    if window_radius is not None:
        win = IntBox.cube(S.n, window_radius)
    elif d.get("window") is not None:
        win = box_from(d["window"])
    else:
        win = default_window(S.n)
    return SFreeScene(S, K, win, {}, d.get("kind"))


def tableau_to(t: CornerTableau) -> dict:
    return {"n": t.n, "b": qv(t.b), "cont": [qv(c) for c in t.cont], "int": [qv(c) for c in t.int_cols]}


def tableau_from(d) -> CornerTableau:
    return CornerTableau(int(_need(d, "n")), parse_vec(_need(d, "b")),
                         tuple(parse_vec(c) for c in d.get("cont", [])),
                         tuple(parse_vec(c) for c in d.get("int", [])))


def cut_to(c: Cut) -> dict:
    return {"s": qv(c.s_coeffs), "y": qv(c.y_coeffs), "rhs": q(c.rhs)}


def cut_from(d) -> Cut:
    return Cut(parse_vec(_need(d, "s")), parse_vec(d.get("y", [])), parse_rat(d.get("rhs", 1)))


def maxform_to(f: MaxForm) -> dict:
    return {"rows": [qv(a) for a in f.rows], "include_zero": f.include_zero}


def maxform_from(d) -> MaxForm:
    return MaxForm(tuple(parse_vec(a) for a in _need(d, "rows")), bool(d.get("include_zero", False)))


def pwl_to(pi) -> dict:
    if isinstance(pi, PwlPeriodic1D):
        out = {"breakpoints": qv(pi.breakpoints), "values": qv(pi.values)}
        if not pi.continuous:
            out["left"] = qv(pi.left)
            out["right"] = qv(pi.right)
        return out
    return {"n": pi.n, "cells": [{"K": hpoly_to(P), "grad": qv(g), "const": q(c)} for P, g, c in pi.cells]}


def pwl_from(d):
    if "cells" in d:
        cells = [(hpoly_from(_need(c, "K")), parse_vec(_need(c, "grad")), parse_rat(_need(c, "const")))
                 for c in d["cells"]]
        return PwlComplexND(int(_need(d, "n")), cells)
    left = d.get("left")
    right = d.get("right")
    return PwlPeriodic1D(parse_vec(_need(d, "breakpoints")), parse_vec(_need(d, "values")),
                         None if left is None else parse_vec(left),
                         None if right is None else parse_vec(right))


def region_to(R, covering=None) -> dict:
    out = {
        "spindles": [{"s": qv(t.s), "k": t.k, "T": hpoly_to(t.base), "full_dimensional": t.full_dimensional}
                     for t in R.spindles],
        "W": [qv(w) for w in R.W.basis],
        "eps": q(R.eps),
        "psi": maxform_to(R.psi),
        "scene": scene_to(R.scene),
    }
    if covering is not None:
        out["covering_fraction"] = q(covering)
    return out


def plain(x):
    """Recursively turn Fractions and tuples into JSON-friendly values."""
    if isinstance(x, Fraction):
        return q(x)
    if isinstance(x, dict):
        return {k: plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    return x
