"""Periodic piecewise-linear functions for the pure integer model.

Subadditivity of a continuous PWL periodic function is a finite check.  Write
D(x, y) = pi(x) + pi(y) - pi(x + y).  Cut the domain of (x, y) by the preimages
of the breakpoint structure under the three maps x, y and x + y (mod 1).  On
each resulting cell all three terms are affine, so D is affine there, and its
minimum over a compact cell sits at a vertex (1D) or is an LP optimum (2D).
"""
from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import NamedTuple, Optional

from . import exactgeo as eg
from .cgf import MaxForm
from .errors import (
    EmptyPolyhedron,
    InputError,
    NotContinuous,
    NotPeriodic,
    NotSublinear,
    OriginValueNonzero,
    VerificationError,
)
from .exactgeo import HPolyhedron, dot, vec

ONE = Fraction(1)
ZERO = Fraction(0)


def _frac(x: Fraction) -> Fraction:
    return x - floor(x)


# ---------------------------------------------------------------------------
# 1D


@dataclass(frozen=True)
class PwlPeriodic1D:
    """Piecewise linear, period 1, knots in [0, 1) starting at 0.

    ``left``/``right`` hold one-sided limits at each knot and default to the
    value; they only differ for discontinuous functions, which are represented
    so that they can be rejected.
    """

    breakpoints: tuple
    values: tuple
    left: Optional[tuple] = None
    right: Optional[tuple] = None

    def __post_init__(self):
        bp = tuple(eg.rat(x) for x in self.breakpoints)
        vals = tuple(eg.rat(x) for x in self.values)
        if not bp or bp[0] != 0 or len(vals) != len(bp):
            raise NotPeriodic("breakpoints must start at 0 and match values")
        if any(not 0 <= x < 1 for x in bp) or any(x >= y for x, y in zip(bp, bp[1:])):
            raise NotPeriodic("breakpoints must increase strictly inside [0, 1)")
        left = tuple(eg.rat(x) for x in self.left) if self.left is not None else vals
        right = tuple(eg.rat(x) for x in self.right) if self.right is not None else vals
        if len(left) != len(bp) or len(right) != len(bp):
            raise NotPeriodic("one-sided limits must match breakpoints")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def continuous(self) -> bool:
        return self.left == self.values == self.right

    @property
    def n(self) -> int:
        return 1

    def segments(self):
        """(x0, x1, value at x0+, value at x1-) for each piece of [0, 1]."""
        bp = self.breakpoints + (ONE,)
        for i in range(len(self.breakpoints)):
            end = self.left[i + 1] if i + 1 < len(self.breakpoints) else self.left[0]
            yield bp[i], bp[i + 1], self.right[i], end

    def slope(self, i: int) -> Fraction:
        x0, x1, v0, v1 = list(self.segments())[i]
        return (v1 - v0) / (x1 - x0)

    def __call__(self, x) -> Fraction:
        if isinstance(x, tuple):
            (x,) = x
        x = _frac(eg.rat(x))
        i = bisect_right(self.breakpoints, x) - 1
        if self.breakpoints[i] == x:
            return self.values[i]
        x0, x1, v0, v1 = list(self.segments())[i]
        return v0 + (v1 - v0) * (x - x0) / (x1 - x0)

    def knots(self) -> list:
        return list(self.breakpoints) + [ONE]


def delta(pi, x, y) -> Fraction:
    if isinstance(x, tuple):
        return pi(x) + pi(y) - pi(tuple(a + c for a, c in zip(x, y)))
    return pi(x) + pi(y) - pi(x + y)


def _b1(b) -> Fraction:
    if isinstance(b, (tuple, list)):
        (b,) = b
    return eg.rat(b)


class MinimalityReport(NamedTuple):
    zero_on_lattice: bool
    subadditive: bool
    subadditive_violation: Optional[tuple]
    symmetric: bool
    symmetric_violation: Optional[tuple]
    nonnegative: bool
    minimal: bool


def _vertices_1d(pi: PwlPeriodic1D) -> list:
    """Vertices in [0,1]^2 of the arrangement x = k, y = k, x + y = k or 1 + k."""
    B = pi.knots()
    T = sorted({k + j for k in B for j in (0, 1)})
    pts = set()
    for x in B:
        for y in B:
            pts.add((x, y))
        for t in T:
            if 0 <= t - x <= 1:
                pts.add((x, t - x))
                pts.add((t - x, x))
    return sorted(pts)


def _check_minimal_1d(pi: PwlPeriodic1D, b) -> MinimalityReport:
    if not pi.continuous:
        raise NotContinuous("function has jumps")
    b = _b1(b)
    zero = pi(0) == 0
    nonneg = all(v >= 0 for v in pi.values)
    worst = None
    for x, y in _vertices_1d(pi):
        d = delta(pi, x, y)
        if d < 0 and (worst is None or d < worst[0]):
            worst = (d, (x, y))
    # p -> pi(p) + pi(b - p) is PWL with knots at breakpoints and at b - breakpoints
    sym_pts = sorted({k for k in pi.breakpoints} | {_frac(b - k) for k in pi.breakpoints})
    sym_bad = next(((p,) for p in sym_pts if pi(p) + pi(b - p) != 1), None)
    sub = worst is None
    return MinimalityReport(zero, sub, None if sub else worst[1], sym_bad is None, sym_bad,
                            nonneg, zero and sub and sym_bad is None and nonneg)


def additivity_domain(pi: PwlPeriodic1D) -> list:
    """Faces of {(x, y) in [0,1]^2 : D(x, y) = 0}, each as a sorted vertex tuple.

    Faces contained in a larger face are dropped.
    """
    if not isinstance(pi, PwlPeriodic1D):
        raise InputError("additivity_domain is implemented for 1D functions")
    if not pi.continuous:
        raise NotContinuous("function has jumps")
    B = pi.knots()
    T = sorted({k + j for k in B for j in (0, 1)})
    faces = set()
    for (x0, x1), (y0, y1) in itertools.product(zip(B, B[1:]), repeat=2):
        for t0, t1 in zip(T, T[1:]):
            if t1 <= x0 + y0 or t0 >= x1 + y1:
                continue
            P = HPolyhedron.box((x0, y0), (x1, y1)).add_rows(
                [((ONE, ONE), t1), ((-ONE, -ONE), -t0)])
            V = eg.vertices(P)
            if len(V) < 3:
                continue
            zs = [v for v in V if delta(pi, *v) == 0]
            if zs:
                faces.add(tuple(sorted(zs)))
    faces = sorted(faces, key=lambda f: (-len(f), f))
    kept = []
    for f in faces:
        if not any(all(_in_face(v, g) for v in f) for g in kept):
            kept.append(f)
    return sorted(kept)


def _in_face(p, face) -> bool:
    if len(face) == 1:
        return tuple(p) == tuple(face[0])
    return eg.in_convex_hull(p, face)


def in_additivity_domain(faces, p) -> bool:
    return any(_in_face(tuple(p), f) for f in faces)


# ---------------------------------------------------------------------------
# 2D complexes


@dataclass
class PwlComplexND:
    """Periodic PWL function given on cells covering [0,1]^n.

    ``cells`` holds ``(HPolyhedron, gradient, constant)``; on a cell the value
    is ``gradient . x + constant``.  Overlapping cells must agree.
    """

    n: int
    cells: list
    _checked: bool = field(default=False, repr=False)

    def __post_init__(self):
        if self.n not in (1, 2):
            raise InputError("complexes are supported for n <= 2")
        cells = []
        for P, g, c in self.cells:
            if P.dim != self.n or len(g) != self.n:
                raise InputError("cell of the wrong dimension")
            if not P.is_bounded:
                raise InputError("cells must be bounded")
            cells.append((P, vec(g), eg.rat(c)))
        self.cells = cells

    def _locate(self, x):
        for P, g, c in self.cells:
            if P.contains(x):
                return g, c
        return None

    def __call__(self, x) -> Fraction:
        x = tuple(_frac(eg.rat(v)) for v in (x if isinstance(x, (tuple, list)) else (x,)))
        hit = self._locate(x)
        if hit is None:
            raise NotPeriodic(f"no cell contains {x}")
        g, c = hit
        return dot(g, x) + c

    def value_on(self, i: int, x) -> Fraction:
        _, g, c = self.cells[i]
        return dot(g, x) + c

    def shifts(self):
        return list(itertools.product((-1, 0, 1), repeat=self.n))

    def check_cover(self):
        unit = HPolyhedron.box((0,) * self.n, (1,) * self.n)
        clipped = [P.intersect(unit) for P, _, _ in self.cells]
        if self.n == 2:
            total = eg.polygon_union_area([Q for Q in clipped if not Q.is_empty])
        else:
            spans = []
            for Q in clipped:
                bb = eg.bounding_box(Q)
                if bb is not None:
                    spans.append((bb[0][0], bb[1][0]))
            total = eg.interval_union_length(spans)
        if total != 1:
            raise NotPeriodic(f"cells cover {total} of the unit cell")

    def check_continuous(self):
        """Overlapping cells, also across the period, agree at every common vertex."""
        for (i, (P, g, c)), (j, (Q, h, d)) in itertools.combinations_with_replacement(
                enumerate(self.cells), 2):
            for z in self.shifts():
                if i == j and not any(z):
                    continue
                Qz = Q.translate(z)
                I = P.intersect(Qz)
                V = eg.vertices(I)
                for v in V:
                    w = tuple(a - zz for a, zz in zip(v, z))
                    if dot(g, v) + c != dot(h, w) + d:
                        raise NotContinuous(f"cells {i} and {j} disagree at {v}")

    def validate(self):
        if not self._checked:
            self.check_cover()
            self.check_continuous()
            self._checked = True


def _check_minimal_nd(pi: PwlComplexND, b) -> MinimalityReport:
    pi.validate()
    n = pi.n
    b = vec(b if isinstance(b, (tuple, list)) else (b,))
    zero = pi((0,) * n) == 0
    cells = pi.cells
    boxes = [eg.bounding_box(P) for P, _, _ in cells]
    nonneg = all(dot(g, v) + c >= 0 for P, g, c in cells for v in eg.vertices(P))
    worst = None
    for i, j in itertools.combinations_with_replacement(range(len(cells)), 2):
        (Pi, gi, ci), (Pj, gj, cj) = cells[i], cells[j]
        lo = [boxes[i][0][t] + boxes[j][0][t] for t in range(n)]
        hi = [boxes[i][1][t] + boxes[j][1][t] for t in range(n)]
        for k, (Pk, gk, ck) in enumerate(cells):
            for z in itertools.product((0, 1, 2), repeat=n):
                if any(hi[t] < boxes[k][0][t] + z[t] or lo[t] > boxes[k][1][t] + z[t] for t in range(n)):
                    continue
                # variables (x, y); x in Pi, y in Pj, x + y - z in Pk
                rows = [(a + (ZERO,) * n, bb) for a, bb in Pi.rows]
                rows += [((ZERO,) * n + a, bb) for a, bb in Pj.rows]
                rows += [(a + a, bb + dot(a, z)) for a, bb in Pk.rows]
                P = HPolyhedron(2 * n, tuple(rows))
                obj = tuple(gi[t] - gk[t] for t in range(n)) + tuple(gj[t] - gk[t] for t in range(n))
                try:
                    res = eg.lp_min(obj, P)
                except EmptyPolyhedron:
                    continue
                d = res.value + ci + cj - ck + dot(gk, z)
                if d < 0 and (worst is None or d < worst[0]):
                    x, y = res.argmin[:n], res.argmin[n:]
                    worst = (d, (x, y))
    sym_bad = None
    for i, (Pi, gi, ci) in enumerate(cells):
        if sym_bad:
            break
        for j, (Pj, gj, cj) in enumerate(cells):
            for z in itertools.product((-1, 0, 1, 2), repeat=n):
                # p in Pi and b - p - z in Pj
                rows = [(tuple(-x for x in a), bb - dot(a, b) + dot(a, z)) for a, bb in Pj.rows]
                I = Pi.add_rows(rows)
                for p in eg.vertices(I):
                    q = tuple(bt - pt - zt for bt, pt, zt in zip(b, p, z))
                    if dot(gi, p) + ci + dot(gj, q) + cj != 1:
                        sym_bad = p
                        break
                if sym_bad:
                    break
            if sym_bad:
                break
    sub = worst is None
    return MinimalityReport(zero, sub, None if sub else worst[1], sym_bad is None, sym_bad,
                            nonneg, zero and sub and sym_bad is None and nonneg)


def check_minimal(pi, b) -> MinimalityReport:
    """Exact test of pi = 0 on Z^n, subadditivity and pi(p) + pi(b - p) = 1."""
    if isinstance(pi, PwlPeriodic1D):
        return _check_minimal_1d(pi, b)
    return _check_minimal_nd(pi, b)


def slope_values(pi) -> set:
    if isinstance(pi, PwlPeriodic1D):
        return {pi.slope(i) for i in range(len(pi.breakpoints))}
    return {g for _, g, _ in pi.cells}


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    extreme: bool
    failed: list
    slopes: int | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"verdict": "extreme" if self.extreme else "refused", "failed": list(self.failed)}
        if self.slopes is not None:
            out["slopes"] = self.slopes
        return out


def certify_two_slope_extreme(pi: PwlPeriodic1D, b) -> Certificate:
    """Extremality through the two-slope theorem; a refusal proves nothing."""
    if not isinstance(pi, PwlPeriodic1D):
        return Certificate(False, ["not one-dimensional"])
    if not pi.continuous:
        return Certificate(False, ["not continuous"])
    k = len(slope_values(pi))
    failed = []
    rep = check_minimal(pi, b)
    if not rep.minimal:
        failed.append("not minimal")
    if k != 2:
        failed.append(f"slopes={k}")
    return Certificate(not failed, failed, k, {"minimality": rep._asdict()})


def certify_nplus1_hypotheses(pi, b) -> Certificate:
    """Extremality through the (n+1)-slope theorem.

    Genuine n-dimensionality is certified by the gradients spanning R^n; when
    they do not, the certificate refuses.
    """
    n = pi.n
    try:
        rep = check_minimal(pi, b)
    except NotContinuous:
        return Certificate(False, ["not continuous"])
    grads = slope_values(pi)
    grads = {g if isinstance(g, tuple) else (g,) for g in grads}
    failed = []
    if not rep.minimal:
        failed.append("not minimal")
    if len(grads) > n + 1:
        failed.append(f"slopes={len(grads)}")
    if eg.rank(list(grads)) < n:
        failed.append(f"not genuinely {n}-dimensional")
    if not failed and len(grads) != n + 1:
        raise VerificationError(f"hypotheses hold but {len(grads)} slopes found")
    return Certificate(not failed, failed, len(grads), {"minimality": rep._asdict()})


# ---------------------------------------------------------------------------
# psi from pi


def psi_from_pi(pi) -> MaxForm:
    """One-sided directional derivative of pi at 0, as a max of linear forms.

    Raises NotSublinear when the local germ of pi at 0 is not convex.
    """
    if isinstance(pi, PwlPeriodic1D):
        if pi(0) != 0:
            raise OriginValueNonzero("pi(0) must be 0")
        if not pi.continuous:
            raise NotContinuous("function has jumps")
        s_right = pi.slope(0)
        s_left = pi.slope(len(pi.breakpoints) - 1)
        if s_right < s_left:
            raise NotSublinear("derivative at 0 is concave")
        return MaxForm(((s_right,), (s_left,)))
    pi.validate()
    n = pi.n
    if pi((0,) * n) != 0:
        raise OriginValueNonzero("pi(0) must be 0")
    local = []
    for P, g, c in pi.cells:
        for z in itertools.product((0, 1), repeat=n):
            Pz = P.translate(tuple(-x for x in z))
            if Pz.contains((0,) * n):
                tight = [a for a, bb in Pz.rows if bb == 0 and any(a)]
                local.append((tight, g))
    # a cone is full-dimensional iff it has an interior direction
    germs = []
    for tight, g in local:
        cone = HPolyhedron(n, tuple((a, Fraction(-1)) for a in tight)) if tight else None
        if cone is not None and cone.is_empty:
            continue
        germs.append((tight, g))
    grads = sorted({g for _, g in germs})
    box = HPolyhedron.box((-1,) * n, (1,) * n)
    for tight, g in germs:
        cone = box.add_rows([(a, ZERO) for a in tight])
        for h in grads:
            if eg.lp_max(tuple(x - y for x, y in zip(h, g)), cone).value > 0:
                raise NotSublinear("derivative at 0 is not a max of the local gradients")
    return MaxForm(tuple(grads))
