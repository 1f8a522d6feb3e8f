"""Brute-force ground truth for cuts, S-freeness and minimality."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import exactgeo as eg
from .cgf import CornerTableau, Cut, smallest_representation
from .errors import DimMismatch, InputError, LatcutError
from .exactgeo import IntBox
from .groupfn import PwlPeriodic1D, check_minimal
from .latticefree import is_s_free, s_points

VALID = "ValidWithinBudget"
VIOLATED = "Violated"
EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class EnumBudget:
    y_box: Optional[IntBox]
    w_box: IntBox
    max_lp_calls: int = 100_000


@dataclass
class Verdict:
    status: str
    witness: Optional[dict] = None
    lp_calls: int = 0
    budget: Optional[EnumBudget] = None

    @property
    def valid(self) -> bool:
        return self.status == VALID

    def to_dict(self) -> dict:
        out = {"status": self.status, "lp_calls": self.lp_calls}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.budget is not None:
            out["budget"] = {
                "y_box": None if self.budget.y_box is None else
                [list(self.budget.y_box.lower), list(self.budget.y_box.upper)],
                "w_box": [list(self.budget.w_box.lower), list(self.budget.w_box.upper)],
                "max_lp_calls": self.budget.max_lp_calls,
            }
        return out


def _lp(t: CornerTableau, costs, target):
    """min costs.s  s.t.  R s = target, s >= 0."""
    if not t.cont:
        return ("optimal", Fraction(0), ()) if not any(target) else ("infeasible", None, None)
    A = [[col[i] for col in t.cont] for i in range(t.n)]
    return eg.simplex_standard(A, target, costs)


def cut_validity_bruteforce(cut: Cut, t: CornerTableau, budget: EnumBudget) -> Verdict:
    """Look for a point of the corner relaxation that violates the cut.

    Enumerates integer y >= 0 in ``y_box`` and lattice offsets w in ``w_box``;
    for each pair the cheapest continuous completion is an exact LP.  Points are
    scanned in lexicographic (y, w) order and the first violation is reported.
    """
    if len(cut.s_coeffs) != len(t.cont) or len(cut.y_coeffs) != len(t.int_cols):
        raise DimMismatch("cut and tableau have different column counts")
    if budget.w_box.dim != t.n:
        raise DimMismatch("w_box has the wrong dimension")
    ell = len(t.int_cols)
    if ell:
        if budget.y_box is None or budget.y_box.dim != ell:
            raise DimMismatch("y_box has the wrong dimension")
        ys = [y for y in budget.y_box.points() if all(v >= 0 for v in y)]
    else:
        ys = [()]
    cache = {}
    calls = 0
    ws = list(budget.w_box.points())
    for y in ys:
        Py = tuple(sum((col[i] * yj for col, yj in zip(t.int_cols, y)), Fraction(0)) for i in range(t.n))
        ycost = sum((c * yj for c, yj in zip(cut.y_coeffs, y)), Fraction(0))
        for w in ws:
            target = tuple(bi + wi - pi for bi, wi, pi in zip(t.b, w, Py))
            if target not in cache:
                if calls >= budget.max_lp_calls:
                    return Verdict(EXHAUSTED, {"y": list(y), "w": list(w)}, calls, budget)
                calls += 1
                cache[target] = _lp(t, cut.s_coeffs, target)
            status, value, s = cache[target]
            if status == "infeasible":
                continue
            if status == "unbounded" or value + ycost < cut.rhs:
                wit = {"y": list(y), "w": list(w), "s": None if s is None else list(s),
                       "lhs": None if value is None else value + ycost}
                return Verdict(VIOLATED, wit, calls, budget)
    return Verdict(VALID, None, calls, budget)


def gauge_cut(K, t: CornerTableau) -> Cut:
    """psi-coefficients from K for the continuous columns, no integer columns."""
    psi = smallest_representation(K)
    return Cut(tuple(psi(r) for r in t.cont), ())


def sfree_equivalence_check(scene, budget: EnumBudget | None = None) -> bool:
    """is_s_free agrees with validity of the gauge cut on single-column tableaus.

    One tableau per S-point s of K uses the column r = s; a point of S inside
    int(K) is then reached at cost psi(s) < 1.
    """
    n = scene.n
    budget = budget or EnumBudget(None, IntBox.cube(n, 5))
    free, _ = is_s_free(scene.K, scene.S, scene.window)
    valid = True
    for s in s_points(scene.K, scene.S, scene.window):
        if not any(s):
            continue
        t = CornerTableau(n, scene.S.b, (s,), ())
        v = cut_validity_bruteforce(gauge_cut(scene.K, t), t, budget)
        if v.status == VIOLATED:
            valid = False
            break
    return free == valid


def lowered(pi: PwlPeriodic1D, p0, delta) -> PwlPeriodic1D:
    """pi with its value at p0 lowered by delta, interpolating linearly on the two incident pieces."""
    p0 = eg.frac_part(eg.rat(p0))
    pts = dict(zip(pi.breakpoints, pi.values))
    pts[p0] = pi(p0) - delta
    bp = sorted(pts)
    return PwlPeriodic1D(tuple(bp), tuple(pts[x] for x in bp))


def minimality_probe(pi: PwlPeriodic1D, b, p0, delta, budget: EnumBudget | None = None) -> bool:
    """Lower pi at p0 by delta and search for a violated pure-integer point.

    Columns p0, b - p0, b - 2 p0, b - 3 p0 are used; a True result corroborates
    that pi cannot be lowered at p0.
    """
    b = eg.rat(b[0] if isinstance(b, (tuple, list)) else b)
    try:
        rep = check_minimal(pi, b)
    except LatcutError as exc:
        raise InputError(f"minimality probe needs a minimal function: {exc}") from exc
    if not rep.minimal:
        raise InputError("minimality probe needs a minimal function")
    delta = eg.rat(delta)
    if delta <= 0:
        return False
    p0 = eg.rat(p0)
    low = lowered(pi, p0, delta)
    cols = [eg.frac_part(c) for c in (p0, b - p0, b - 2 * p0, b - 3 * p0)]
    t = CornerTableau(1, (b,), (), tuple((c,) for c in cols))
    cut = Cut((), tuple(low(c) for c in cols))
    budget = budget or EnumBudget(IntBox.cube(4, 3), IntBox.cube(1, 5))
    return cut_validity_bruteforce(cut, t, budget).status == VIOLATED
