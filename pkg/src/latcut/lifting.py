"""Trivial lifting, spindles, lifting regions and the covering test."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd
from typing import NamedTuple

from . import exactgeo as eg
from .cgf import MaxForm, gauge_from_polyhedron
from .errors import (
    InputError,
    NonCoerciveDirection,
    NotMaximal,
    NotOnFacet,
    NotUnimodular,
    RankDeficient,
    UnboundedInput,
    UnsupportedS,
)
from .exactgeo import HPolyhedron, IntBox, dot, vec, vsub
from .groupfn import PwlComplexND
from .latticefree import SFreeScene, SSpec, is_maximal_s_free, s_points

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class TranslationGroup:
    """The lattice generated by ``basis`` (integral, linearly independent)."""

    n: int
    basis: tuple

    def __post_init__(self):
        basis = tuple(vec(v) for v in self.basis)
        if any(len(v) != self.n for v in basis) or any(not eg.is_integral(v) for v in basis):
            raise InputError("basis vectors must be integral of length n")
        if basis and eg.rank(basis) != len(basis):
            raise InputError("basis vectors must be independent")
        object.__setattr__(self, "basis", basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def combo(self, c) -> tuple:
        out = (ZERO,) * self.n
        for ci, v in zip(c, self.basis):
            out = eg.vadd(out, eg.vscale(ci, v))
        return out

    def contains(self, w) -> bool:
        w = vec(w)
        if not self.basis:
            return not any(w)
        # solve basis^T c = w in the least-squares sense and check exactness
        G = [[dot(u, v) for v in self.basis] for u in self.basis]
        c = eg.solve(G, [dot(u, w) for u in self.basis])
        return c is not None and all(x.denominator == 1 for x in c) and self.combo(c) == w


def translation_group(S: SSpec) -> TranslationGroup:
    """Integral translations w with S + Zw inside S."""
    n = S.n
    if S.Q is None:
        return TranslationGroup(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))
    if n > 2:
        raise UnsupportedS("translation groups with Q are implemented for n <= 2")
    lin = S.Q.lineality
    if len(lin) == n:
        return TranslationGroup(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))
    # one-dimensional lineality: the primitive vector generates the line's lattice
    return TranslationGroup(n, tuple(eg.primitive(d) for d in lin))


# ---------------------------------------------------------------------------
# spindles


@dataclass(frozen=True)
class Spindle:
    base: HPolyhedron
    s: tuple
    k: int

    @property
    def full_dimensional(self) -> bool:
        n = self.base.dim
        rows = [(a + (ONE,), b) for a, b in self.base.rows]
        rows.append(((ZERO,) * n + (ONE,), ONE))
        P = HPolyhedron(n + 1, tuple(rows))
        return eg.lp_max((ZERO,) * n + (ONE,), P).value > 0


def spindle_from_rows(rows, s, k: int) -> Spindle:
    """T(s) for psi = max_i rows[i].r and the facet k with rows[k].s = 1."""
    s = vec(s)
    ak = rows[k]
    if dot(ak, s) != 1:
        raise NotOnFacet(f"a_{k}.s = {dot(ak, s)}, expected 1")
    out = []
    for i, ai in enumerate(rows):
        if i == k:
            continue
        d = vsub(ai, ak)
        out.append((d, ZERO))
        out.append((eg.vscale(-1, d), -dot(d, s)))
    if not out:
        out = [((ZERO,) * len(s), ZERO)]
    return Spindle(HPolyhedron(len(s), tuple(out)), s, k)


def spindle(scene: SFreeScene, s, k: int) -> Spindle:
    return spindle_from_rows(gauge_from_polyhedron(scene.K).rows, s, k)


@dataclass
class LiftingRegion:
    spindles: list
    W: TranslationGroup
    scene: SFreeScene
    psi: MaxForm
    eps: Fraction
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.scene.n

    def full_spindles(self) -> list:
        return [t for t in self.spindles if t.full_dimensional]

    def contains(self, r) -> bool:
        return any(t.base.contains(r) for t in self.spindles)


def _same_orbit(s, t, lin) -> bool:
    d = vsub(s, t)
    if not any(d):
        return True
    return bool(lin) and eg.rank(list(lin) + [d]) == len(lin)


def lifting_region(scene: SFreeScene) -> LiftingRegion:
    """All spindles T(s), one per S-point s of K (mod lineality) and per facet through s.

    Also records eps > 0 with the sup-norm ball of radius eps around 0 inside
    the region: near 0 the spindle of a facet's relint point is the cone where
    that facet's row attains the max, and these cones cover R^n.
    """
    ok, wits = is_maximal_s_free(scene.K, scene.S, scene.window)
    if not ok:
        raise NotMaximal("scene is not maximal S-free")
    psi = gauge_from_polyhedron(scene.K)
    rows = psi.rows
    lin = HPolyhedron(scene.n, tuple((a, ONE) for a in rows)).lineality
    seen = []
    spindles = []
    for s in s_points(scene.K, scene.S, scene.window):
        for k, a in enumerate(rows):
            if dot(a, s) != 1:
                continue
            if any(k == k2 and _same_orbit(s, s2, lin) for s2, k2 in seen):
                continue
            seen.append((s, k))
            spindles.append(spindle_from_rows(rows, s, k))
    # eps from the facet witnesses; wits align with irredundant rows, as do psi rows
    eps = None
    for k, sk in enumerate(wits):
        for i, ai in enumerate(rows):
            if i == k:
                continue
            norm = sum(abs(x) for x in vsub(ai, rows[k]))
            e = (1 - dot(ai, sk)) / norm
            eps = e if eps is None else min(eps, e)
    if eps is None:
        eps = ONE
    return LiftingRegion(spindles, translation_group(scene.S), scene, psi, eps,
                         {"witnesses": wits})


# ---------------------------------------------------------------------------
# trivial lifting


class LiftValue(NamedTuple):
    value: Fraction
    w: tuple
    window: IntBox | None


def trivial_lifting_certified(psi: MaxForm, W: TranslationGroup, p) -> LiftValue:
    """min over w in W of psi(p + w), with the coefficient window that certifies it.

    Any w = sum c_j basis_j improving on w = 0 satisfies a_i.(p + w) <= psi(p)
    for every row; those c form a polyhedron, enumerated modulo its lineality
    (along which psi(p + w) is constant).
    """
    p = vec(p)
    if len(p) != psi.dim or W.n != psi.dim:
        raise InputError("dimension mismatch")
    best = (psi(p), (ZERO,) * W.n)
    m = W.rank
    if m == 0:
        return LiftValue(best[0], best[1], None)
    # a nearby translate usually gives a much smaller bound, hence a smaller window
    G = [[dot(u, v) for v in W.basis] for u in W.basis]
    c0 = eg.solve(G, [dot(u, p) for u in W.basis])
    w0 = W.combo([-round(x) for x in c0])
    M = min(best[0], psi(eg.vadd(p, w0)))
    rows = []
    for a in psi.rows:
        aB = tuple(dot(a, v) for v in W.basis)
        if psi.include_zero:
            continue
        rows.append((aB, M - dot(a, p)))
    C = HPolyhedron(m, tuple(rows))
    try:
        region = eg.fundamental_region(C)
    except UnboundedInput as exc:
        raise NonCoerciveDirection("psi is not coercive along W") from exc
    win = eg.lattice_window(region)
    if win is None:
        return LiftValue(best[0], best[1], None)
    for c in win.points():
        if not region.contains(c):
            continue
        w = W.combo(c)
        v = psi(eg.vadd(p, w))
        if v < best[0] or (v == best[0] and w < best[1]):
            best = (v, w)
    return LiftValue(best[0], best[1], win)


def trivial_lifting(psi: MaxForm, W: TranslationGroup, p) -> Fraction:
    return trivial_lifting_certified(psi, W, p).value


# ---------------------------------------------------------------------------
# covering


def _rat_gcd(xs) -> Fraction:
    g = ZERO
    for x in xs:
        x = abs(Fraction(x))
        if x == 0:
            continue
        if g == 0:
            g = x
            continue
        den = g.denominator * x.denominator // gcd(g.denominator, x.denominator)
        g = Fraction(gcd(int(g * den), int(x * den)), den)
    return g


def periodic_interval_cover(intervals, g: Fraction) -> Fraction:
    """Fraction of [0, g) covered by the union of the intervals plus gZ."""
    pieces = []
    for lo, hi in intervals:
        if hi - lo >= g:
            return ONE
        for k in range(floor(lo / g), ceil(hi / g) + 1):
            a, b = max(lo - k * g, ZERO), min(hi - k * g, g)
            if a < b:
                pieces.append((a, b))
    return eg.interval_union_length(pieces) / g


def _spindle_range(P: HPolyhedron, phi) -> tuple:
    R = eg.fundamental_region(P)
    return eg.lp_min(phi, R).value, eg.lp_max(phi, R).value


def covering_fraction(region: LiftingRegion) -> Fraction:
    """Exact area fraction of a fundamental cell of W covered by T(S, K) + W.

    Returns 1 exactly when the covering property holds.
    """
    n = region.n
    W = region.W
    if W.rank == 0:
        raise RankDeficient("W_S is trivial")
    if n > 2:
        raise InputError("exact covering is implemented for n <= 2")
    spins = region.spindles
    lin = HPolyhedron(n, tuple((a, ONE) for a in region.psi.rows)).lineality
    if len(lin) + W.rank < n:
        return ZERO
    if lin or n == 1:
        # project along the common lineality: phi vanishes on lin
        if n == 1:
            phi = (ONE,)
        else:
            d = lin[0]
            phi = (-d[1], d[0])
        g = _rat_gcd(dot(phi, w) for w in W.basis)
        if g == 0:
            return ZERO
        return periodic_interval_cover([_spindle_range(t.base, phi) for t in spins], g)
    # bounded spindles, W of rank 2: work in lattice coordinates
    B = tuple(tuple(W.basis[j][i] for j in range(2)) for i in range(2))
    Binv = eg.inverse(B)
    unit = HPolyhedron.box((0, 0), (1, 1))
    pieces = []
    for t in spins:
        if not t.full_dimensional:
            continue
        T = t.base.affine_image(Binv)
        lo, hi = eg.bounding_box(T)
        for z in itertools.product(*(range(floor(-hi[i]), ceil(1 - lo[i]) + 1) for i in range(2))):
            Q = T.translate(z).intersect(unit)
            if not Q.is_empty:
                pieces.append(Q)
    return eg.polygon_union_area(pieces)


def covering_fraction_2d(region: LiftingRegion) -> Fraction:
    if region.n != 2:
        raise InputError("covering_fraction_2d needs n = 2")
    return covering_fraction(region)


def lifting_complex(region: LiftingRegion) -> PwlComplexND:
    """The trivial lifting as a periodic PWL complex, valid when the region covers.

    On a spindle psi equals its facet row a_k, so on T(s) + w the trivial
    lifting is a_k.(p - w).
    """
    n = region.n
    std = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    if region.W.basis != tuple(vec(v) for v in std):
        raise InputError("complex construction needs W = Z^n")
    if covering_fraction(region) != 1:
        raise InputError("the lifting region does not cover; pi* is not given by spindles")
    unit = HPolyhedron.box((0,) * n, (1,) * n)
    cells = []
    for t in region.full_spindles():
        a = region.psi.rows[t.k]
        T = eg.fundamental_region(t.base) if t.base.lineality else t.base
        lo, hi = eg.bounding_box(T)
        ranges = [range(floor(-hi[i]) - 1, ceil(1 - lo[i]) + 2) for i in range(n)]
        for z in itertools.product(*ranges):
            Q = t.base.translate(z).intersect(unit)
            if Q.is_empty or not Spindle(Q, t.s, t.k).full_dimensional:
                continue
            cells.append((eg.irredundant_hrep(Q), a, -dot(a, z)))
    return PwlComplexND(n, cells)


# ---------------------------------------------------------------------------
# constructions


def coproduct(K1: HPolyhedron, K2: HPolyhedron, mu) -> HPolyhedron:
    """(K1/mu) coproduct (K2/(1-mu)): polar of the product of the smallest prepolars."""
    mu = eg.rat(mu)
    if not 0 < mu < 1:
        raise InputError("mu must lie strictly between 0 and 1")
    for K in (K1, K2):
        if not K.is_bounded:
            raise UnboundedInput("coproduct is defined for polytopes")
    G1 = eg.smallest_prepolar(K1).vertices
    G2 = eg.smallest_prepolar(K2).vertices
    rows = [(tuple(mu * x for x in a) + tuple((1 - mu) * y for y in c), ONE) for a in G1 for c in G2]
    return eg.irredundant_hrep(HPolyhedron(K1.dim + K2.dim, tuple(rows)))


def pyramid_canonical(n: int, U=None, z=None) -> HPolyhedron:
    """U conv{0, n e_1, ..., n e_n} + z."""
    if n not in (2, 3):
        raise InputError("pyramids are built for n = 2 or 3")
    U = U if U is not None else [[int(i == j) for j in range(n)] for i in range(n)]
    U = tuple(tuple(eg.rat(x) for x in row) for row in U)
    if len(U) != n or any(len(r) != n for r in U):
        raise InputError("U must be n x n")
    if any(x.denominator != 1 for r in U for x in r) or abs(eg.det(U)) != 1:
        raise NotUnimodular("U must be integral with determinant +-1")
    z = vec(z) if z is not None else (ZERO,) * n
    if not eg.is_integral(z):
        raise NotUnimodular("shift must be integral")
    rows = [(tuple(-ONE if i == j else ZERO for j in range(n)), ZERO) for i in range(n)]
    rows.append(((ONE,) * n, Fraction(n)))
    return HPolyhedron(n, tuple(rows)).affine_image(U, z)
