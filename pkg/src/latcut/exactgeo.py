"""Exact rational polyhedral kernel for small dimensions.

Everything here works over :class:`fractions.Fraction`; there are no
tolerances.  Vertex enumeration is restricted to ``n <= 3`` (pairwise and
triple row intersections); the LP solver is a dense two-phase simplex with
Bland's rule and works in any dimension.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import ceil, floor, gcd
from typing import Iterable, NamedTuple, Sequence

from gmpy2 import mpq

from .errors import (
    DimensionTooLarge,
    DimMismatch,
    EmptyPolyhedron,
    InputError,
    NonNormalizable,
    NotPointed,
    OriginNotInterior,
    UnboundedInput,
)

Rat = Fraction
Vec = tuple  # tuple[Fraction, ...]


def rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected so that inexact data never sneaks in.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"not a rational: {x!r}")


def vec(xs: Iterable) -> Vec:
    return tuple(rat(x) for x in xs)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vadd(a, b) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a) -> Vec:
    return tuple(c * x for x in a)


def frac_part(x: Fraction) -> Fraction:
    return x - floor(x)


def is_integral(v: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def primitive(v: Sequence) -> tuple:
    """Scale a nonzero rational vector to the primitive integer vector with the same direction."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise InputError("zero vector has no primitive direction")
    return tuple(Fraction(x // g) for x in ints)


# ---------------------------------------------------------------------------
# dense exact linear algebra

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    M = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    if not M:
        return M, pivots
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        M[r] = [x / p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], n: int) -> list[Vec]:
    """Basis of {x in Q^n : r.x = 0 for all rows}, each vector primitive integral."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    M, pivots = rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -M[i][f]
        basis.append(primitive(x))
    return basis


def solve(M: Sequence[Sequence], rhs: Sequence) -> Vec | None:
    """Solve a square system exactly; None when singular."""
    n = len(M)
    aug = [list(map(Fraction, row)) + [Fraction(r)] for row, r in zip(M, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        for i in range(c + 1, n):
            if aug[i][c] != 0:
                f = aug[i][c] / p
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = aug[i][n] - sum((aug[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = s / aug[i][i]
    return tuple(x)


def det(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    A = [list(map(Fraction, r)) for r in M]
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


def inverse(M: Sequence[Sequence]) -> tuple[Vec, ...]:
    n = len(M)
    aug = [list(map(Fraction, M[i])) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise InputError("matrix is singular")
    return tuple(tuple(R[i][n:]) for i in range(n))


def matvec(M, x) -> Vec:
    return tuple(dot(row, x) for row in M)


def transpose(M) -> tuple[Vec, ...]:
    return tuple(zip(*M))


def matmul(A, B) -> tuple[Vec, ...]:
    Bt = transpose(B)
    return tuple(tuple(dot(r, c) for c in Bt) for r in A)


# ---------------------------------------------------------------------------
# simplex

class _Unbounded:
    def __repr__(self):
        return "UNBOUNDED"


UNBOUNDED = _Unbounded()


class LPResult(NamedTuple):
    value: object  # Fraction or UNBOUNDED
    argmin: Vec | None


def _pivot(T, obj, basis, r, j):
    row = T[r]
    p = row[j]
    if p != 1:
        row = [v / p for v in row]
        T[r] = row
    for i in range(len(T)):
        if i != r:
            f = T[i][j]
            if f:
                T[i] = [o - f * v for o, v in zip(T[i], row)]
    f = obj[j]
    if f:
        obj[:] = [o - f * v for o, v in zip(obj, row)]
    basis[r] = j


def _run(T, obj, basis, ncols):
    """Bland's rule iterations; returns False on unboundedness."""
    while True:
        j = next((k for k in range(ncols) if obj[k] < 0), None)
        if j is None:
            return True
        best = None
        for i, row in enumerate(T):
            a = row[j]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, obj, basis, best[1], j)


def _fr(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def simplex_standard(A: Sequence[Sequence], b: Sequence, c: Sequence):
    """Solve min c.z s.t. A z = b, z >= 0 exactly.

    Returns ``(status, value, z)`` with status in {"optimal", "infeasible",
    "unbounded"}.  Pivoting runs on gmpy2 rationals; results are Fractions.
    """
    m = len(A)
    N = len(c)
    c = [_mpq(x) for x in c]
    if m == 0:
        if any(x < 0 for x in c):
            return "unbounded", None, None
        return "optimal", Fraction(0), tuple(Fraction(0) for _ in range(N))
    T = []
    for i, (row, bi) in enumerate(zip(A, b)):
        row = [_mpq(x) for x in row]
        bi = _mpq(bi)
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        T.append(row + [mpq(int(i == k)) for k in range(m)] + [bi])
    basis = [N + i for i in range(m)]
    obj = [-sum((T[i][k] for i in range(m)), mpq(0)) for k in range(N)]
    obj += [mpq(0)] * m + [-sum((T[i][-1] for i in range(m)), mpq(0))]
    _run(T, obj, basis, N + m)
    if obj[-1] != 0:
        return "infeasible", None, None
    # drive artificials out of the basis
    keep = []
    for i in range(m):
        if basis[i] >= N:
            j = next((k for k in range(N) if T[i][k] != 0), None)
            if j is None:
                continue  # redundant equality
            _pivot(T, obj, basis, i, j)
        keep.append(i)
    T = [T[i][:N] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    obj = c + [mpq(0)]
    for i, bv in enumerate(basis):
        f = obj[bv]
        if f:
            obj = [o - f * v for o, v in zip(obj, T[i])]
    if not _run(T, obj, basis, N):
        return "unbounded", None, None
    z = [Fraction(0)] * N
    for i, bv in enumerate(basis):
        z[bv] = _fr(T[i][-1])
    return "optimal", -_fr(obj[-1]), tuple(z)


def _mpq(x):
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


# ---------------------------------------------------------------------------
# containers

@dataclass(frozen=True)
class IntBox:
    lower: tuple
    upper: tuple

    def __post_init__(self):
        lo = tuple(int(x) for x in self.lower)
        hi = tuple(int(x) for x in self.upper)
        if len(lo) != len(hi) or not lo:
            raise InputError("box bounds must be non-empty and of equal length")
        if any(a > b for a, b in zip(lo, hi)):
            raise InputError("box lower bound exceeds upper bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def cube(cls, n: int, r: int) -> "IntBox":
        return cls((-r,) * n, (r,) * n)

    @property
    def dim(self) -> int:
        return len(self.lower)

    def points(self):
        return product(*(range(a, b + 1) for a, b in zip(self.lower, self.upper)))

    def contains_box(self, other: "IntBox") -> bool:
        return all(a <= c and d <= b for a, b, c, d in zip(self.lower, self.upper, other.lower, other.upper))

    def intersect(self, other: "IntBox") -> "IntBox | None":
        lo = tuple(max(a, c) for a, c in zip(self.lower, other.lower))
        hi = tuple(min(b, d) for b, d in zip(self.upper, other.upper))
        if any(a > b for a, b in zip(lo, hi)):
            return None
        return IntBox(lo, hi)


@dataclass(frozen=True)
class VPolytope:
    vertices: tuple

    def __post_init__(self):
        pts = tuple(vec(v) for v in self.vertices)
        if not pts:
            raise InputError("vertex list must be non-empty")
        if len({len(p) for p in pts}) != 1:
            raise DimMismatch("vertices of different dimension")
        object.__setattr__(self, "vertices", pts)

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def canonical(self) -> "VPolytope":
        """Drop duplicates and points lying in the convex hull of the others."""
        pts = list(dict.fromkeys(self.vertices))
        kept = list(pts)
        for p in pts:
            others = [q for q in kept if q != p]
            if others and in_convex_hull(p, others):
                kept.remove(p)
        return VPolytope(tuple(sorted(kept)))


def in_convex_hull(p: Sequence, pts: Sequence[Sequence]) -> bool:
    n = len(p)
    A = [[q[i] for q in pts] for i in range(n)] + [[1] * len(pts)]
    status, _, _ = simplex_standard(A, list(p) + [1], [0] * len(pts))
    return status == "optimal"


@dataclass(frozen=True)
class HPolyhedron:
    """{x : a.x <= b for every row (a, b)}."""

    dim: int
    rows: tuple

    def __post_init__(self):
        rows = tuple((vec(a), rat(b)) for a, b in self.rows)
        if self.dim <= 0:
            raise InputError("dimension must be positive")
        for a, _ in rows:
            if len(a) != self.dim:
                raise DimMismatch(f"row of length {len(a)} in a {self.dim}-dimensional polyhedron")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows) -> "HPolyhedron":
        rows = list(rows)
        if not rows:
            raise InputError("need at least one row to infer dimension")
        return cls(len(rows[0][0]), tuple(rows))

    @classmethod
    def box(cls, lower, upper) -> "HPolyhedron":
        n = len(lower)
        rows = []
        for i in range(n):
            e = tuple(Fraction(int(i == j)) for j in range(n))
            rows.append((e, rat(upper[i])))
            rows.append((vscale(-1, e), -rat(lower[i])))
        return cls(n, tuple(rows))

    @property
    def A(self):
        return [a for a, _ in self.rows]

    @property
    def b(self):
        return [b for _, b in self.rows]

    def slack(self, x):
        return [b - dot(a, x) for a, b in self.rows]

    def contains(self, x) -> bool:
        return all(dot(a, x) <= b for a, b in self.rows)

    def interior_contains(self, x) -> bool:
        # rows with a = 0 and b >= 0 impose nothing
        return all(dot(a, x) < b or (b >= 0 and not any(a)) for a, b in self.rows)

    def intersect(self, other: "HPolyhedron") -> "HPolyhedron":
        if other.dim != self.dim:
            raise DimMismatch("dimension mismatch")
        return HPolyhedron(self.dim, self.rows + other.rows)

    def add_rows(self, rows) -> "HPolyhedron":
        return HPolyhedron(self.dim, self.rows + tuple(rows))

    def translate(self, t) -> "HPolyhedron":
        return HPolyhedron(self.dim, tuple((a, b + dot(a, t)) for a, b in self.rows))

    def scale(self, lam) -> "HPolyhedron":
        lam = rat(lam)
        if lam <= 0:
            raise InputError("scale factor must be positive")
        return HPolyhedron(self.dim, tuple((a, b * lam) for a, b in self.rows))

    def affine_image(self, U, t=None) -> "HPolyhedron":
        """Image under x -> U x + t (U invertible)."""
        Uinv = inverse(U)
        t = t if t is not None else (0,) * self.dim
        rows = []
        for a, b in self.rows:
            aU = tuple(dot(a, col) for col in transpose(Uinv))
            rows.append((aU, b + dot(aU, vec(t))))
        return HPolyhedron(self.dim, tuple(rows))

    @cached_property
    def is_empty(self) -> bool:
        return lp_feasible_point(self) is None

    @cached_property
    def lineality(self) -> list:
        return nullspace([a for a, _ in self.rows if any(a)], self.dim)

    @cached_property
    def is_bounded(self) -> bool:
        if self.is_empty:
            return True
        return recession_is_trivial([a for a, _ in self.rows], self.dim)

    def __str__(self):
        return " ; ".join(f"{list(map(str, a))}.x <= {b}" for a, b in self.rows)


# ---------------------------------------------------------------------------
# LP

def lp_feasible_point(P: HPolyhedron) -> Vec | None:
    res = _lp(tuple(Fraction(0) for _ in range(P.dim)), P)
    if res is None:
        return None
    return res.argmin


def _lp(c, P: HPolyhedron):
    n = P.dim
    m = len(P.rows)
    # x = x+ - x-, slack per row
    A = []
    for i, (a, _) in enumerate(P.rows):
        A.append(list(a) + [-x for x in a] + [Fraction(int(i == k)) for k in range(m)])
    cost = list(c) + [-x for x in c] + [Fraction(0)] * m
    status, value, z = simplex_standard(A, P.b, cost)
    if status == "infeasible":
        return None
    if status == "unbounded":
        return LPResult(UNBOUNDED, None)
    x = tuple(z[i] - z[n + i] for i in range(n))
    return LPResult(value, x)


def lp_min(c: Sequence, P: HPolyhedron) -> LPResult:
    """Exact min of c.x over P; value is UNBOUNDED when no finite optimum exists."""
    c = vec(c)
    if len(c) != P.dim:
        raise DimMismatch("objective dimension mismatch")
    res = _lp(c, P)
    if res is None:
        raise EmptyPolyhedron("LP over an empty polyhedron")
    return res


def lp_max(c: Sequence, P: HPolyhedron) -> LPResult:
    res = lp_min(vscale(-1, vec(c)), P)
    if res.value is UNBOUNDED:
        return res
    return LPResult(-res.value, res.argmin)


def recession_is_trivial(A: Sequence[Sequence], n: int) -> bool:
    """True iff {x : A x <= 0} = {0}."""
    A = [a for a in A if any(a)]
    if rank(A) < n:
        return False
    if n <= 3:
        return not extreme_rays(A, n)
    # pointed cone: nonzero x in the cone has sum(Ax) < 0
    s = tuple(sum((a[j] for a in A), Fraction(0)) for j in range(n))
    C = HPolyhedron(n, tuple((a, Fraction(0)) for a in A) + ((vscale(-1, s), Fraction(1)),))
    return lp_min(s, C).value == 0


# ---------------------------------------------------------------------------
# representations

def _row_key(a, b):
    j = next(i for i, x in enumerate(a) if x != 0)
    s = abs(a[j])
    return tuple(x / s for x in a), b / s


def irredundant_hrep(P: HPolyhedron) -> HPolyhedron:
    """Remove redundant rows; among duplicates the lowest-index row survives."""
    if P.is_empty:
        raise EmptyPolyhedron("irredundant_hrep of an empty polyhedron")
    seen = set()
    rows = []
    for a, b in P.rows:
        if not any(a):
            continue
        key = _row_key(a, b)
        if key in seen:
            continue
        seen.add(key)
        rows.append((a, b))
    kept = list(rows)
    for r in rows:
        others = [q for q in kept if q is not r]
        if not others:
            continue
        res = lp_max(r[0], HPolyhedron(P.dim, tuple(others)))
        if res.value is not UNBOUNDED and res.value <= r[1]:
            kept.remove(r)
    if not kept:
        raise UnboundedInput("polyhedron is the whole space")
    return HPolyhedron(P.dim, tuple(kept))


def normalize_rhs(K: HPolyhedron) -> HPolyhedron:
    """Rescale every row to right-hand side 1; requires 0 in int(K)."""
    rows = []
    for a, b in K.rows:
        if not any(a):
            if b < 0:
                raise EmptyPolyhedron("row 0 <= negative")
            continue
        if b <= 0:
            raise OriginNotInterior(f"row {list(map(str, a))} has rhs {b}")
        rows.append((vscale(1 / b, a), Fraction(1)))
    if not rows:
        raise UnboundedInput("polyhedron is the whole space")
    return HPolyhedron(K.dim, tuple(rows))


def polar(V: VPolytope) -> HPolyhedron:
    return HPolyhedron(V.dim, tuple((v, Fraction(1)) for v in V.vertices))


def smallest_prepolar(K: HPolyhedron) -> VPolytope:
    if any(b <= 0 for a, b in K.rows if any(a)):
        raise OriginNotInterior("origin is not interior")
    irr = irredundant_hrep(K)
    for a, b in irr.rows:
        if b <= 0:
            raise NonNormalizable("irredundant row with non-positive rhs")
    return VPolytope(tuple(vscale(1 / b, a) for a, b in irr.rows))


def extreme_rays(A: Sequence[Sequence], n: int) -> list[Vec]:
    """Primitive extreme rays of the pointed cone {x : A x <= 0}, n <= 3."""
    A = [vec(a) for a in A if any(a)]
    rays = set()
    for idx in combinations(range(len(A)), n - 1):
        ns = nullspace([A[i] for i in idx], n)
        if len(ns) != 1:
            continue
        d = ns[0]
        for s in (1, -1):
            r = vscale(s, d)
            if all(dot(a, r) <= 0 for a in A):
                rays.add(r)
    return sorted(rays)


def vertex_enum(P: HPolyhedron) -> tuple[VPolytope, list[Vec]]:
    """Vertices and extreme rays of a pointed polyhedron, n <= 3, lexicographically sorted."""
    n = P.dim
    if n > 3:
        raise DimensionTooLarge("vertex enumeration is only supported for n <= 3")
    A = [a for a, _ in P.rows if any(a)]
    if rank(A) < n:
        if P.is_empty:
            raise EmptyPolyhedron("empty polyhedron")
        raise NotPointed("polyhedron has a nontrivial lineality space")
    rows = [(a, b) for a, b in P.rows if any(a)]
    verts = set()
    for idx in combinations(range(len(rows)), n):
        sol = solve([rows[i][0] for i in idx], [rows[i][1] for i in idx])
        if sol is not None and P.contains(sol):
            verts.add(sol)
    if not verts:
        raise EmptyPolyhedron("empty polyhedron")
    return VPolytope(tuple(sorted(verts))), extreme_rays(A, n)


def vertices(P: HPolyhedron) -> list[Vec]:
    """Vertices of a bounded polyhedron; [] when empty."""
    try:
        V, rays = vertex_enum(P)
    except EmptyPolyhedron:
        return []
    if rays:
        raise UnboundedInput("polyhedron is unbounded")
    return list(V.vertices)


def bounding_box(P: HPolyhedron) -> tuple[Vec, Vec] | None:
    """Exact coordinate-wise min/max of a bounded polyhedron (None when empty)."""
    if P.dim <= 3:
        V = vertices(P)
        if not V:
            return None
        lo = tuple(min(v[i] for v in V) for i in range(P.dim))
        hi = tuple(max(v[i] for v in V) for i in range(P.dim))
        return lo, hi
    if P.is_empty:
        return None
    lo, hi = [], []
    for i in range(P.dim):
        e = tuple(Fraction(int(i == j)) for j in range(P.dim))
        mn, mx = lp_min(e, P).value, lp_max(e, P).value
        if mn is UNBOUNDED or mx is UNBOUNDED:
            raise UnboundedInput("polyhedron is unbounded")
        lo.append(mn)
        hi.append(mx)
    return tuple(lo), tuple(hi)


def lattice_window(P: HPolyhedron, shift=None) -> IntBox | None:
    """Smallest IntBox of z with shift + z possibly in the bounded polyhedron P."""
    bb = bounding_box(P)
    if bb is None:
        return None
    shift = vec(shift) if shift is not None else (Fraction(0),) * P.dim
    lo = tuple(ceil(l - s) for l, s in zip(bb[0], shift))
    hi = tuple(floor(h - s) for h, s in zip(bb[1], shift))
    if any(a > b for a, b in zip(lo, hi)):
        return None
    return IntBox(lo, hi)


def slab_rows(basis: Sequence[Vec], n: int) -> list:
    """Rows 0 <= t_j <= 1 for the coordinates t of x along an integral basis.

    Translating x by an integer combination of the basis shifts t by integers,
    so the slab contains a representative of every orbit.
    """
    if not basis:
        return []
    D = [list(d) for d in basis]
    G = [[dot(di, dj) for dj in D] for di in D]
    Ginv = inverse(G)
    # t = Ginv D x
    coord = [tuple(sum((Ginv[j][k] * D[k][i] for k in range(len(D))), Fraction(0)) for i in range(n))
             for j in range(len(D))]
    rows = []
    for c in coord:
        rows.append((c, Fraction(1)))
        rows.append((vscale(-1, c), Fraction(0)))
    return rows


def fundamental_region(P: HPolyhedron, basis: Sequence[Vec] | None = None) -> HPolyhedron:
    """P cut down to one period of its (integral) lineality lattice.

    Raises UnboundedInput when the recession cone is larger than the lineality space.
    """
    basis = P.lineality if basis is None else list(basis)
    R = P.add_rows(slab_rows(basis, P.dim))
    if not R.is_bounded:
        raise UnboundedInput("recession cone is not a linear subspace")
    return R


def integer_points(P: HPolyhedron, window: IntBox, shift=None, strict: bool = False) -> list[Vec]:
    """All points of (shift + Z^n) in P with integer part inside window, sorted."""
    if window.dim != P.dim:
        raise DimMismatch("window dimension mismatch")
    shift = vec(shift) if shift is not None else (Fraction(0),) * P.dim
    test = P.interior_contains if strict else P.contains
    out = []
    for z in window.points():
        x = tuple(s + zi for s, zi in zip(shift, z))
        if test(x):
            out.append(x)
    out.sort()
    return out


# ---------------------------------------------------------------------------
# 2D measure

def _edges_and_interval(P: HPolyhedron):
    lower, upper, xcons = [], [], []
    for (a1, a2), b in P.rows:
        if a2 > 0:
            upper.append((-a1 / a2, b / a2))
        elif a2 < 0:
            lower.append((-a1 / a2, b / a2))
        elif a1 != 0:
            xcons.append((a1, b))
    return lower, upper, xcons


def _interval_at(spec, x):
    lower, upper, xcons = spec
    for a1, b in xcons:
        if a1 * x > b:
            return None
    lo = max(m * x + c for m, c in lower)
    hi = min(m * x + c for m, c in upper)
    if lo > hi:
        return None
    return lo, hi


def polygon_union_area(polys: Sequence[HPolyhedron]) -> Fraction:
    """Exact area of a union of bounded convex polygons.

    Vertical sweep: between consecutive x-breakpoints (vertices and boundary
    crossings) every boundary line keeps its order, so the union length is
    affine in x and the strip area is width times the midpoint length.
    """
    data = []
    for P in polys:
        if P.dim != 2:
            raise DimMismatch("polygon_union_area needs 2D polygons")
        if P.is_empty:
            continue
        if not P.is_bounded:
            raise UnboundedInput("unbounded polygon")
        V = vertices(P)
        xs = [v[0] for v in V]
        ys = [v[1] for v in V]
        data.append((P, V, (min(xs), max(xs), min(ys), max(ys))))
    if not data:
        return Fraction(0)
    breaks = set()
    for P, V, _ in data:
        breaks.update(v[0] for v in V)
    for (P, _, bp), (Q, _, bq) in combinations(data, 2):
        if bp[1] < bq[0] or bq[1] < bp[0] or bp[3] < bq[2] or bq[3] < bp[2]:
            continue
        for a, b in P.rows:
            for c, d in Q.rows:
                pt = solve([a, c], [b, d])
                if pt is not None and bp[0] < pt[0] < bp[1] and P.contains(pt) and Q.contains(pt):
                    breaks.add(pt[0])
    xs = sorted(breaks)
    specs = [(_edges_and_interval(P), bp) for P, _, bp in data]
    area = Fraction(0)
    for x0, x1 in zip(xs, xs[1:]):
        mid = (x0 + x1) / 2
        ivs = []
        for spec, bp in specs:
            if bp[0] <= mid <= bp[1]:
                iv = _interval_at(spec, mid)
                if iv is not None and iv[1] > iv[0]:
                    ivs.append(iv)
        if not ivs:
            continue
        ivs.sort()
        length = Fraction(0)
        cur_lo, cur_hi = ivs[0]
        for lo, hi in ivs[1:]:
            if lo > cur_hi:
                length += cur_hi - cur_lo
                cur_lo, cur_hi = lo, hi
            elif hi > cur_hi:
                cur_hi = hi
        length += cur_hi - cur_lo
        area += (x1 - x0) * length
    return area


def convex_hull_2d(points: Sequence[Sequence]) -> HPolyhedron:
    """H-representation of the convex hull of planar points (monotone chain)."""
    pts = sorted(set(vec(p) for p in points))
    if len(pts) < 3:
        raise InputError("need three affinely independent points")

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise InputError("points are collinear")
    rows = []
    for p, q in zip(hull, hull[1:] + hull[:1]):
        a = (q[1] - p[1], p[0] - q[0])  # outward for counter-clockwise order
        rows.append((a, dot(a, p)))
    return HPolyhedron(2, tuple(rows))


def area(P: HPolyhedron) -> Fraction:
    return polygon_union_area([P])


def interval_union_length(intervals: Iterable[tuple]) -> Fraction:
    ivs = sorted((Fraction(a), Fraction(b)) for a, b in intervals if b > a)
    if not ivs:
        return Fraction(0)
    total = Fraction(0)
    cur_lo, cur_hi = ivs[0]
    for lo, hi in ivs[1:]:
        if lo > cur_hi:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        elif hi > cur_hi:
            cur_hi = hi
    return total + cur_hi - cur_lo
