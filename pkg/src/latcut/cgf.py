"""Cut-generating functions from S-free polyhedra and corner tableaus."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import exactgeo as eg
from .errors import (
    AllRhsIntegral,
    BadFraction,
    DimMismatch,
    FullDimRecession,
    InputError,
    NotMaximal,
)
from .exactgeo import HPolyhedron, dot, vec


@dataclass(frozen=True)
class MaxForm:
    """r -> max_i a_i.r, optionally with 0 added to the max (gauge of the set)."""

    rows: tuple
    include_zero: bool = False

    def __post_init__(self):
        rows = tuple(vec(a) for a in self.rows)
        if not rows:
            raise InputError("a MaxForm needs at least one row")
        if len({len(a) for a in rows}) != 1:
            raise DimMismatch("rows of unequal length")
        object.__setattr__(self, "rows", rows)

    @property
    def dim(self) -> int:
        return len(self.rows[0])

    def __call__(self, r) -> Fraction:
        return evaluate(self, r)

    def as_polyhedron(self) -> HPolyhedron:
        """{r : f(r) <= 1}."""
        return HPolyhedron(self.dim, tuple((a, Fraction(1)) for a in self.rows))


def evaluate(f: MaxForm, r) -> Fraction:
    r = vec(r)
    if len(r) != f.dim:
        raise DimMismatch(f"point of dimension {len(r)} for a {f.dim}-dimensional form")
    best = max(dot(a, r) for a in f.rows)
    if f.include_zero and best < 0:
        return Fraction(0)
    return best


def has_interior_recession(K: HPolyhedron) -> bool:
    """True when some r has a_i.r < 0 for every row, i.e. int(rec K) is nonempty."""
    n = K.dim
    P = HPolyhedron(n, tuple((a, Fraction(-1)) for a, _ in K.rows))
    return not P.is_empty


def smallest_representation(K: HPolyhedron) -> MaxForm:
    """mu_K(r) = max_i a_i.r over the irredundant rows scaled to rhs 1."""
    return MaxForm(tuple(eg.smallest_prepolar(K).vertices), False)


def gauge_from_polyhedron(K: HPolyhedron) -> MaxForm:
    """The gauge of K written without the zero term.

    Dropping the zero term is exact only when rec(K) has empty interior, which
    holds for every maximal lattice-free set.
    """
    f = smallest_representation(K)
    if has_interior_recession(f.as_polyhedron()):
        raise FullDimRecession("rec(K) has interior; use smallest_representation")
    return f


@dataclass(frozen=True)
class CornerTableau:
    """Rs + Py in b + Z^n, s >= 0, y >= 0 integral."""

    n: int
    b: tuple
    cont: tuple = ()
    int_cols: tuple = ()

    def __post_init__(self):
        b = vec(self.b)
        cont = tuple(vec(c) for c in self.cont)
        ints = tuple(vec(c) for c in self.int_cols)
        if len(b) != self.n or any(len(c) != self.n for c in cont + ints):
            raise DimMismatch("tableau columns must have n entries")
        if eg.is_integral(b):
            raise AllRhsIntegral("b is integral: 0 is feasible and nothing can be cut")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "cont", cont)
        object.__setattr__(self, "int_cols", ints)


@dataclass(frozen=True)
class Cut:
    """sum s_coeffs[j] s_j + sum y_coeffs[j] y_j >= rhs."""

    s_coeffs: tuple
    y_coeffs: tuple
    rhs: Fraction = Fraction(1)

    def lhs(self, s, y) -> Fraction:
        return sum((c * x for c, x in zip(self.s_coeffs, s)), Fraction(0)) + \
            sum((c * x for c, x in zip(self.y_coeffs, y)), Fraction(0))


def corner_from_tableau(rows, integer_vars) -> CornerTableau:
    """Corner relaxation of an optimal simplex tableau.

    ``rows`` is a list of ``(basic, rhs, {nonbasic: coeff})`` meaning
    ``x_basic + sum coeff * x_nonbasic = rhs``.  Rows with a continuous basic
    variable are dropped; the basic variables of the kept rows lose their sign
    constraint and only their integrality remains.
    """
    ints = set(integer_vars)
    kept = [(bv, eg.rat(rhs), {k: eg.rat(v) for k, v in coeffs.items()})
            for bv, rhs, coeffs in rows if bv in ints]
    if not kept:
        raise AllRhsIntegral("no row with an integer basic variable")
    b = tuple(r[1] for r in kept)
    if eg.is_integral(b):
        raise AllRhsIntegral("every kept row has integral right-hand side")
    names = []
    for _, _, coeffs in kept:
        for k in coeffs:
            if k not in names:
                names.append(k)
    col = lambda k: tuple(c.get(k, Fraction(0)) for _, _, c in kept)
    cont = tuple(col(k) for k in names if k not in ints)
    int_cols = tuple(col(k) for k in names if k in ints)
    return CornerTableau(len(kept), b, cont, int_cols)


def cut_from_set(t: CornerTableau, scene, lifter: Optional[Callable] = None) -> Cut:
    """Intersection cut from a maximal S-free scene, with a lifting for integer columns.

    ``scene.K`` lives in r-space (0 interior) and ``scene.S`` must be b + Z^n for
    the tableau's b.  The default lifter is the trivial lifting.
    """
    from .latticefree import is_maximal_s_free
    from .lifting import translation_group, trivial_lifting

    if scene.n != t.n:
        raise DimMismatch("scene and tableau dimensions differ")
    if scene.S.Q is not None or not eg.is_integral(eg.vsub(scene.S.b, t.b)):
        raise InputError("scene's S is not b + Z^n for the tableau's b")
    ok, _ = is_maximal_s_free(scene.K, scene.S, scene.window)
    if not ok:
        raise NotMaximal("scene is not maximal S-free")
    psi = gauge_from_polyhedron(scene.K)
    if lifter is None:
        W = translation_group(scene.S)
        lifter = lambda p: trivial_lifting(psi, W, p)
    return Cut(tuple(psi(r) for r in t.cont), tuple(lifter(p) for p in t.int_cols))


def gmi_split_1d(f):
    """psi and pi of the Gomory mixed-integer cut for fractional part f."""
    from .groupfn import PwlPeriodic1D

    f = eg.rat(f)
    if not 0 < f < 1:
        raise BadFraction("f must lie strictly between 0 and 1")
    psi = MaxForm(((1 / f,), (-1 / (1 - f),)))
    pi = PwlPeriodic1D((Fraction(0), f), (Fraction(0), Fraction(1)))
    return psi, pi
