"""S-free polyhedra for S = (b + Z^n) ∩ Q.

Verification is exhaustive enumeration over a bounded region: K (cut by Q)
restricted to one period of its integral lineality lattice.  Translating by a
lattice vector of the lineality space preserves both K and S, so checking that
region is complete.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from math import ceil
from typing import NamedTuple, Optional

from . import exactgeo as eg
from .errors import (
    BadParams,
    InputError,
    NotClassifiable,
    NotCompact,
    NotMaximal,
    NotSymmetric,
    UnboundedInput,
    WindowInsufficient,
)
from .exactgeo import HPolyhedron, IntBox, dot, vec, vsub

DEFAULT_WINDOW = 10

SPLIT = "Split"
TYPE1 = "Type1Triangle"
TYPE2 = "Type2Triangle"
TYPE3 = "Type3Triangle"
QUAD = "Quadrilateral"
TAGS = (SPLIT, TYPE1, TYPE2, TYPE3, QUAD)


@dataclass(frozen=True)
class SSpec:
    """S = (b + Z^n) ∩ Q; Q = None means all of R^n."""

    n: int
    b: tuple
    Q: Optional[HPolyhedron] = None

    def __post_init__(self):
        b = vec(self.b)
        if len(b) != self.n:
            raise InputError("b has the wrong dimension")
        if self.Q is not None and self.Q.dim != self.n:
            raise InputError("Q has the wrong dimension")
        object.__setattr__(self, "b", b)

    def contains(self, x) -> bool:
        return eg.is_integral(vsub(x, self.b)) and (self.Q is None or self.Q.contains(x))

    def excludes_origin(self) -> bool:
        return not eg.is_integral(self.b) or (self.Q is not None and not self.Q.contains((0,) * self.n))

    def translate(self, t) -> "SSpec":
        t = vec(t)
        Q = self.Q.translate(t) if self.Q is not None else None
        return SSpec(self.n, tuple(eg.frac_part(x + y) for x, y in zip(self.b, t)), Q)


@dataclass
class SFreeScene:
    S: SSpec
    K: HPolyhedron
    window: IntBox
    certificates: dict = field(default_factory=dict)
    kind: Optional[str] = None

    @property
    def n(self) -> int:
        return self.S.n

    def translate(self, t) -> "SFreeScene":
        """The scene (S + t, K + t); the window grows to keep covering K."""
        t = vec(t)
        pad = max([0] + [ceil(abs(x)) + 1 for x in t])
        win = IntBox(tuple(x - pad for x in self.window.lower), tuple(x + pad for x in self.window.upper))
        return SFreeScene(self.S.translate(t), self.K.translate(t), win, {}, self.kind)


class Class2D(NamedTuple):
    tag: str
    witnesses: list
    certificate: dict


def default_window(n: int) -> IntBox:
    return IntBox.cube(n, DEFAULT_WINDOW)


# ---------------------------------------------------------------------------
# enumeration

def search_region(K: HPolyhedron, S: SSpec) -> HPolyhedron:
    P = K if S.Q is None else K.intersect(S.Q)
    try:
        return eg.fundamental_region(P)
    except UnboundedInput as exc:
        raise WindowInsufficient(
            "K is neither bounded nor of the form bounded + rational lineality") from exc


def s_points(K: HPolyhedron, S: SSpec, window: IntBox | None = None) -> list:
    """S-points of K (closed) up to translation along K's lineality lattice."""
    if K.dim != S.n:
        raise InputError("K and S have different dimensions")
    window = window or default_window(S.n)
    region = search_region(K, S)
    need = eg.lattice_window(region, S.b)
    if need is None:
        return []
    if not window.contains_box(need):
        raise WindowInsufficient(f"region needs window {need.lower}..{need.upper}")
    return [x for x in eg.integer_points(region, need, S.b) if S.Q is None or S.Q.contains(x)]


def is_s_free(K: HPolyhedron, S: SSpec, window: IntBox | None = None):
    """(True, None) if int(K) has no S-point, else (False, violating point)."""
    for x in s_points(K, S, window):
        if K.interior_contains(x):
            return False, x
    return True, None


def is_full_dimensional(K: HPolyhedron) -> bool:
    n = K.dim
    rows = [(a + (Fraction(1),), b) for a, b in K.rows]
    rows.append(((Fraction(0),) * n + (Fraction(1),), Fraction(1)))
    P = HPolyhedron(n + 1, tuple(rows))
    res = eg.lp_max((0,) * n + (1,), P) if not P.is_empty else None
    return res is not None and res.value > 0


def facet_relint_points(K: HPolyhedron, pts) -> list[list]:
    """For an irredundant K, the given points grouped by the facet whose relint holds them."""
    out = [[] for _ in K.rows]
    for x in pts:
        sl = K.slack(x)
        zero = [i for i, s in enumerate(sl) if s == 0]
        if len(zero) == 1 and all(s > 0 for i, s in enumerate(sl) if i != zero[0]):
            out[zero[0]].append(x)
    return out


def is_maximal_s_free(K: HPolyhedron, S: SSpec, window: IntBox | None = None):
    """(maximal?, one witness per irredundant facet or None).

    Witnesses are aligned with ``irredundant_hrep(K).rows``.
    """
    irr = eg.irredundant_hrep(K)
    if not is_full_dimensional(irr):
        return False, [None] * len(irr.rows)
    pts = s_points(irr, S, window)
    if any(irr.interior_contains(x) for x in pts):
        return False, [None] * len(irr.rows)
    groups = facet_relint_points(irr, pts)
    wits = [g[0] if g else None for g in groups]
    return all(w is not None for w in wits), wits


def doignon_check(K: HPolyhedron) -> bool:
    return len(eg.irredundant_hrep(K).rows) <= 2 ** K.dim


# ---------------------------------------------------------------------------
# 2D classification

def _half(v):
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_cmp(u, v):
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def cyclic_order(vectors) -> list[int]:
    """Indices of 2D vectors sorted counter-clockwise by angle."""
    return sorted(range(len(vectors)), key=cmp_to_key(lambda i, j: _angle_cmp(vectors[i], vectors[j])))


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def boundary_profile(K: HPolyhedron, S: SSpec, window: IntBox | None = None):
    """For a bounded irredundant 2D polygon: relint S-points per side and S-vertices."""
    pts = s_points(K, S, window)
    groups = facet_relint_points(K, pts)
    verts = eg.vertices(K)
    return groups, [v for v in verts if S.contains(v)], verts


def _type1_certificate(verts, S: SSpec):
    v0, v1, v2 = verts
    u1 = tuple(x / 2 for x in vsub(v1, v0))
    u2 = tuple(x / 2 for x in vsub(v2, v0))
    if not (eg.is_integral(u1) and eg.is_integral(u2)):
        return None
    d = _cross(u1, u2)
    if abs(d) != 1:
        return None
    return {"U": [[u1[0], u2[0]], [u1[1], u2[1]]], "shift": list(v0)}


def classify_2d(K: HPolyhedron, S: SSpec, window: IntBox | None = None) -> Class2D:
    """Tag a maximal (b + Z^2)-free polyhedron with one of the five types."""
    if S.n != 2 or K.dim != 2:
        raise InputError("classify_2d works in the plane only")
    if S.Q is not None:
        raise InputError("classification is implemented for S = b + Z^2 only")
    ok, wits = is_maximal_s_free(K, S, window)
    if not ok:
        raise NotMaximal("K is not a maximal S-free set")
    irr = eg.irredundant_hrep(K)
    A = irr.A
    if irr.lineality:
        if len(A) == 2 and _cross(A[0], A[1]) == 0 and dot(A[0], A[1]) < 0:
            return Class2D(SPLIT, wits, {"lineality": [list(d) for d in irr.lineality]})
        raise NotClassifiable("unbounded but not a split")
    groups, s_verts, verts = boundary_profile(irr, S, window)
    counts = [len(g) for g in groups]
    m = len(A)
    if m == 4:
        if counts != [1, 1, 1, 1] or s_verts:
            raise NotClassifiable(f"quadrilateral with side counts {counts}")
        order = cyclic_order(A)
        s = [groups[i][0] for i in order]
        if vsub(s[0], s[1]) == vsub(s[3], s[2]) and abs(_cross(vsub(s[1], s[0]), vsub(s[3], s[0]))) == 1:
            return Class2D(QUAD, wits, {"cyclic": [list(p) for p in s]})
        raise NotClassifiable("side points do not form a fundamental parallelogram")
    if m == 3:
        if counts == [1, 1, 1]:
            if not s_verts:
                return Class2D(TYPE3, wits, {})
            if len(s_verts) == 3:
                cert = _type1_certificate(verts, S)
                if cert is not None:
                    return Class2D(TYPE1, wits, cert)
            raise NotClassifiable("triangle with some lattice vertices")
        big = [i for i, c in enumerate(counts) if c >= 2]
        small = [i for i, c in enumerate(counts) if c == 1]
        if len(big) == 1 and len(small) == 2:
            p, q = groups[small[0]][0], groups[small[1]][0]
            a = A[big[0]]
            if dot(a, vsub(q, p)) == 0:
                return Class2D(TYPE2, wits, {"long_side": big[0], "side_count": counts[big[0]]})
            raise NotClassifiable("type 2 parallelism condition fails")
        raise NotClassifiable(f"triangle with side counts {counts}")
    raise NotClassifiable(f"{m} facets")


# ---------------------------------------------------------------------------
# canonical constructions (built in the Z^2 frame, then recentred)

def _q(x):
    return Fraction(x) if not isinstance(x, str) else Fraction(x)


def _unimodular(U):
    if U is None:
        return ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    U = tuple(tuple(Fraction(x) for x in row) for row in U)
    if not all(x.denominator == 1 for row in U for x in row) or abs(eg.det(U)) != 1:
        raise BadParams("U must be an integral matrix with determinant ±1")
    return U


def _through(normal, point):
    n = vec(normal)
    return (n, dot(n, vec(point)))


def _frame_polygon(kind, params):
    """K0 in the Z^2 frame and its vertices (None for the split)."""
    if kind == SPLIT:
        c = eg.primitive(vec(params.get("c", (1, 0))))
        K0 = HPolyhedron(2, ((c, Fraction(1)), (eg.vscale(-1, c), Fraction(0))))
        return K0
    if kind == TYPE1:
        return HPolyhedron(2, (((-1, 0), 0), ((0, -1), 0), ((1, 1), 2)))
    if kind == TYPE2:
        a, h = _q(params.get("a", Fraction(1, 2))), _q(params.get("h", 2))
        if not (0 < a < 1 and h > 1):
            raise BadParams("type 2 needs 0 < a < 1 and h > 1")
        # base on x2 = 0; sides through (0,1) and (1,1) meeting at apex (a, h)
        left = _through((-(h - 1), a), (0, 1))
        right = _through((h - 1, 1 - a), (1, 1))
        return HPolyhedron(2, (((0, -1), 0), left, right))
    if kind == TYPE3:
        nA = vec(params.get("nA", (-1, -2)))
        nB = vec(params.get("nB", (2, 1)))
        nC = vec(params.get("nC", (-1, 3)))
        if not (nA[0] < 0 and nA[1] < nA[0]):
            raise BadParams("nA must satisfy nA2 < nA1 < 0")
        if not (0 < nB[1] < nB[0]):
            raise BadParams("nB must satisfy 0 < nB2 < nB1")
        if not (nC[0] < 0 < nC[1]):
            raise BadParams("nC must satisfy nC1 < 0 < nC2")
        return HPolyhedron(2, (_through(nA, (0, 0)), _through(nB, (1, 0)), _through(nC, (0, 1))))
    if kind == QUAD:
        ns = params.get("normals", ((-1, -1), (1, -1), (1, 1), (-1, 1)))
        pts = ((0, 0), (1, 0), (1, 1), (0, 1))
        if len(ns) != 4:
            raise BadParams("quadrilateral needs four normals")
        return HPolyhedron(2, tuple(_through(n, p) for n, p in zip(ns, pts)))
    raise BadParams(f"unknown kind {kind!r}")


def make_canonical(kind: str, params: dict | None = None) -> SFreeScene:
    """A verified maximal S-free scene of the given type with 0 in int(K).

    The set is built for the lattice Z^2, mapped by a unimodular ``U`` and then
    recentred at an interior point ``q``; in the recentred frame S = -q + Z^2.
    """
    params = dict(params or {})
    U = _unimodular(params.get("U"))
    K0 = _frame_polygon(kind, params)
    if kind == SPLIT:
        c = K0.rows[0][0]
        t = _q(params.get("t", Fraction(1, 2)))
        s = _q(params.get("s", Fraction(1, 2)))
        if not 0 < t < 1:
            raise BadParams("t must lie in (0, 1)")
        g = _bezout(c)
        d = (-c[1], c[0])
        q0 = tuple(t * gi + s * di for gi, di in zip(g, d))
    else:
        try:
            verts = eg.vertices(K0)
        except UnboundedInput as exc:
            raise BadParams("parameters give an unbounded polygon") from exc
        if len(verts) < 3:
            raise BadParams("degenerate polygon")
        w = [Fraction(x) for x in params.get("weights", [1] * len(verts))]
        if len(w) != len(verts) or any(x <= 0 for x in w):
            raise BadParams("weights must be positive, one per vertex")
        tot = sum(w)
        q0 = tuple(sum(wi * v[i] for wi, v in zip(w, verts)) / tot for i in range(2))
    K1 = K0.affine_image(U)
    q = eg.matvec(U, q0)
    K = eg.irredundant_hrep(K1.translate(eg.vscale(-1, q)))
    S = SSpec(2, tuple(eg.frac_part(-x) for x in q))
    window = default_window(2)
    if K.is_bounded:
        need = eg.lattice_window(K, S.b)
        r = max([DEFAULT_WINDOW] + [abs(x) + 1 for x in need.lower + need.upper])
        window = IntBox.cube(2, r)
    ok, wits = is_maximal_s_free(K, S, window)
    if not ok:
        raise BadParams(f"{kind} parameters do not give a maximal S-free set")
    if kind in (TYPE1, TYPE2, TYPE3, QUAD):
        _check_profile(kind, K, S, window)
    return SFreeScene(S, K, window, {"facet_points": wits}, kind)


def _check_profile(kind, K, S, window):
    groups, s_verts, verts = boundary_profile(K, S, window)
    counts = sorted(len(g) for g in groups)
    want = {
        TYPE1: lambda: counts == [1, 1, 1] and len(s_verts) == 3,
        TYPE2: lambda: len(counts) == 3 and counts[:2] == [1, 1] and counts[2] >= 2,
        TYPE3: lambda: counts == [1, 1, 1] and not s_verts,
        QUAD: lambda: counts == [1, 1, 1, 1] and not s_verts,
    }[kind]
    if not want():
        raise BadParams(f"{kind} parameters give side counts {counts}")


def _bezout(c):
    """Integral g with c.g = 1 for a primitive integral c."""
    a, b = int(c[0]), int(c[1])

    def egcd(x, y):
        if y == 0:
            return (1 if x >= 0 else -1), 0, abs(x)
        u, v, g = egcd(y, x % y)
        return v, u - (x // y) * v, g

    u, v, g = egcd(a, b)
    assert g == 1
    return (Fraction(u), Fraction(v))


# ---------------------------------------------------------------------------
# randomized parameters

def _rand_rat(rng: random.Random, lo, hi, den=12) -> Fraction:
    lo, hi = Fraction(lo), Fraction(hi)
    k = rng.randint(1, den - 1)
    return lo + (hi - lo) * Fraction(k, den)


def random_unimodular(rng: random.Random, steps: int = 2):
    M = [[1, 0], [0, 1]]
    for _ in range(steps):
        k = rng.choice([-1, 1])
        E = [[1, k], [0, 1]] if rng.random() < 0.5 else [[1, 0], [k, 1]]
        M = [[sum(M[i][t] * E[t][j] for t in range(2)) for j in range(2)] for i in range(2)]
    if rng.random() < 0.5:
        M = [M[1], M[0]]
    return M


def random_params(kind: str, rng: random.Random) -> dict:
    p = {"U": random_unimodular(rng, rng.randint(0, 2))}
    if kind == SPLIT:
        p["c"] = rng.choice([(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (3, 2)])
        p["t"] = _rand_rat(rng, 0, 1)
        p["s"] = _rand_rat(rng, 0, 1)
        return p
    if kind == TYPE2:
        p["a"] = _rand_rat(rng, 0, 1)
        p["h"] = 1 + _rand_rat(rng, Fraction(1, 2), 3)
    elif kind == TYPE3:
        x = _rand_rat(rng, Fraction(1, 4), 2)
        p["nA"] = (-x, -x - _rand_rat(rng, 0, 2))
        y = _rand_rat(rng, Fraction(1, 4), 2)
        p["nB"] = (y + _rand_rat(rng, 0, 2), y)
        p["nC"] = (-_rand_rat(rng, Fraction(1, 4), 2), _rand_rat(rng, Fraction(1, 4), 2))
    elif kind == QUAD:
        base = ((-1, -1), (1, -1), (1, 1), (-1, 1))
        p["normals"] = [tuple(c + _rand_rat(rng, Fraction(-1, 3), Fraction(1, 3)) for c in n) for n in base]
    nv = 4 if kind == QUAD else 3
    p["weights"] = [rng.randint(1, 5) for _ in range(nv)]
    return p


def random_scene(kind: str, rng: random.Random, max_tries: int = 200) -> SFreeScene:
    """Rejection-sample parameters until make_canonical accepts them."""
    for _ in range(max_tries):
        params = random_params(kind, rng)
        try:
            return make_canonical(kind, params)
        except BadParams:
            continue
    raise BadParams(f"no valid {kind} parameters found in {max_tries} draws")


# ---------------------------------------------------------------------------
# Minkowski

class MinkowskiResult(NamedTuple):
    volume: Fraction | None
    guaranteed: bool
    witness: tuple | None


def _is_centrally_symmetric(C: HPolyhedron) -> bool:
    keys = {eg._row_key(a, b) for a, b in C.rows}
    return all((tuple(-x for x in k[0]), k[1]) in keys for k in keys)


def minkowski_check(C: HPolyhedron, window: IntBox | None = None) -> MinkowskiResult:
    """Search a nonzero integer point of a 0-symmetric convex body C.

    ``guaranteed`` is set when vol(C) >= 2^n, in which case a point must exist.
    """
    if C.is_empty or not C.is_bounded:
        raise NotCompact("C must be a nonempty polytope")
    irr = eg.irredundant_hrep(C)
    if not _is_centrally_symmetric(irr):
        raise NotSymmetric("C is not centrally symmetric about 0")
    n = C.dim
    if n == 1:
        lo, hi = eg.bounding_box(irr)
        volume = hi[0] - lo[0]
    elif n == 2:
        volume = eg.area(irr)
    else:
        volume = None
    guaranteed = volume is not None and volume >= 2 ** n
    win = eg.lattice_window(irr)
    if window is not None and win is not None:
        win = win.intersect(window)
    wit = None
    if win is not None:
        pts = [p for p in eg.integer_points(irr, win) if any(p)]
        if pts:
            wit = min(pts, key=lambda p: (sum(x * x for x in p), p))
    return MinkowskiResult(volume, guaranteed, wit)
