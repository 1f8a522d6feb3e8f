import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import rationals, rvec
from latcut import exactgeo as eg
from latcut.errors import (
    DimMismatch,
    EmptyPolyhedron,
    InputError,
    NotPointed,
    OriginNotInterior,
    UnboundedInput,
)
from latcut.exactgeo import UNBOUNDED, HPolyhedron, IntBox

WEDGE = HPolyhedron(2, (((1, 0), 1), ((0, 1), 1), ((F(-1, 2), F(1, 2)), 1)))
SQUARE = HPolyhedron.box((0, 0), (1, 1))


def test_rat_rejects_floats_and_bools():
    assert eg.rat("3/6") == F(1, 2)
    assert eg.rat(2) == 2
    with pytest.raises(InputError):
        eg.rat(0.5)
    with pytest.raises(InputError):
        eg.rat(True)


def test_lp_box_corner():
    res = eg.lp_min((-1, -1), SQUARE)
    assert res.value == -2 and res.argmin == (1, 1)


def test_lp_unbounded_and_empty():
    assert eg.lp_min((1, 1), WEDGE).value is UNBOUNDED
    empty = SQUARE.add_rows([((1, 0), -1)])
    with pytest.raises(EmptyPolyhedron):
        eg.lp_min((1, 0), empty)
    with pytest.raises(DimMismatch):
        eg.lp_min((1,), SQUARE)


def test_irredundant_drops_redundant_row():
    K = WEDGE.add_rows([((1, 1), 3)])
    assert eg.irredundant_hrep(K).rows == WEDGE.rows


def test_irredundant_keeps_lowest_index_duplicate():
    K = HPolyhedron(1, (((2,), 2), ((1,), 1), ((-1,), 1)))
    assert eg.irredundant_hrep(K).rows == (((2,), 2), ((-1,), 1))


def test_vertex_enum_wedge():
    V, rays = eg.vertex_enum(WEDGE)
    assert V.vertices == ((-1, 1), (1, 1))
    assert set(rays) == {(-1, -1), (0, -1)}


def test_vertex_enum_errors():
    with pytest.raises(NotPointed):
        eg.vertex_enum(HPolyhedron(2, (((1, 0), 1), ((-1, 0), 1))))
    with pytest.raises(EmptyPolyhedron):
        eg.vertex_enum(SQUARE.add_rows([((1, 0), -1)]))


def test_vertices_raises_on_rays():
    with pytest.raises(UnboundedInput):
        eg.vertices(WEDGE)


def test_prepolar_and_polar_of_diamond():
    D = HPolyhedron(2, tuple((s, 1) for s in itertools.product((-1, 1), repeat=2)))
    G = eg.smallest_prepolar(D)
    assert sorted(G.vertices) == sorted(itertools.product((-1, 1), repeat=2))
    assert eg.polar(G).rows == tuple((v, 1) for v in G.vertices)
    with pytest.raises(OriginNotInterior):
        eg.smallest_prepolar(SQUARE)


def test_normalize_rhs():
    K = HPolyhedron(1, (((2,), 4), ((-3,), 1)))
    assert eg.normalize_rhs(K).rows == (((F(1, 2),), 1), ((-3,), 1))


def test_fundamental_region_of_split():
    split = HPolyhedron(2, (((1, 0), F(1, 2)), ((-1, 0), F(1, 2))))
    R = eg.fundamental_region(split)
    assert R.is_bounded
    lo, hi = eg.bounding_box(R)
    assert hi[1] - lo[1] == 1
    with pytest.raises(UnboundedInput):
        eg.fundamental_region(WEDGE)


def test_convex_hull_2d():
    P = eg.convex_hull_2d([(0, 0), (2, 0), (0, 2), (1, 1), (0, 1)])
    assert eg.area(P) == 2
    assert sorted(eg.vertices(P)) == [(0, 0), (0, 2), (2, 0)]


@given(st.lists(rvec(2, lo=-3, hi=3, max_den=4), min_size=3, max_size=7))
def test_integer_points_match_bruteforce(pts):
    try:
        P = eg.convex_hull_2d(pts)
    except InputError:
        return
    found = eg.integer_points(P, IntBox.cube(2, 4))
    brute = [(F(x), F(y)) for x in range(-4, 5) for y in range(-4, 5) if P.contains((x, y))]
    assert found == sorted(brute)


def _shoelace(V):
    c = tuple(sum(v[i] for v in V) / len(V) for i in range(2))
    from latcut.latticefree import cyclic_order
    order = cyclic_order([eg.vsub(v, c) for v in V])
    V = [V[i] for i in order]
    return abs(sum(p[0] * q[1] - q[0] * p[1] for p, q in zip(V, V[1:] + V[:1]))) / 2


@given(st.lists(rvec(2, lo=-3, hi=3, max_den=5), min_size=3, max_size=6))
def test_area_matches_shoelace(pts):
    try:
        P = eg.convex_hull_2d(pts)
    except InputError:
        return
    assert eg.area(P) == _shoelace(eg.vertices(P))


def _boxes_union_area(boxes):
    # inclusion-exclusion over axis-parallel boxes
    total = F(0)
    for k in range(1, len(boxes) + 1):
        for sub in itertools.combinations(boxes, k):
            lo = [max(b[0][i] for b in sub) for i in range(2)]
            hi = [min(b[1][i] for b in sub) for i in range(2)]
            if all(l < h for l, h in zip(lo, hi)):
                total += (-1) ** (k + 1) * (hi[0] - lo[0]) * (hi[1] - lo[1])
    return total


box_st = st.tuples(rvec(2, lo=0, hi=2, max_den=4), rvec(2, lo=0, hi=2, max_den=4)).map(
    lambda ab: (tuple(min(x, y) for x, y in zip(*ab)), tuple(max(x, y) for x, y in zip(*ab)))
).filter(lambda b: all(l < h for l, h in zip(*b)))


@given(st.lists(box_st, min_size=1, max_size=4))
def test_union_area_against_inclusion_exclusion(boxes):
    polys = [HPolyhedron.box(lo, hi) for lo, hi in boxes]
    assert eg.polygon_union_area(polys) == _boxes_union_area(boxes)


def test_union_area_overlapping_triangles():
    T1 = eg.convex_hull_2d([(0, 0), (2, 0), (0, 2)])
    T2 = eg.convex_hull_2d([(0, 0), (2, 0), (2, 2)])
    # union is the square minus the triangle above both
    assert eg.polygon_union_area([T1, T2]) == 3


@given(st.lists(st.lists(rationals(-3, 3, 4), min_size=3, max_size=3), min_size=1, max_size=3),
       st.lists(rationals(-3, 3, 4), min_size=3, max_size=3))
def test_simplex_against_basic_solution_enumeration(A, c):
    A = [[F(x) for x in row] for row in A]
    m = len(A)
    b = [sum(row) for row in A]  # z = (1,1,1) is feasible
    status, value, z = eg.simplex_standard(A, b, c)
    assert status in ("optimal", "unbounded")
    best = None
    for cols in itertools.combinations(range(3), m):
        M = [[A[i][j] for j in cols] for i in range(m)]
        sol = eg.solve(M, b)
        if sol is None or any(x < 0 for x in sol):
            continue
        v = sum(c[j] * x for j, x in zip(cols, sol))
        best = v if best is None else min(best, v)
    if status == "optimal":
        assert all(x >= 0 for x in z)
        assert [sum(a * x for a, x in zip(row, z)) for row in A] == b
        if best is not None and eg.rank(A) == m:
            assert value == best
        assert value <= sum(c)


@given(st.lists(st.lists(rationals(-3, 3, 3), min_size=3, max_size=3), min_size=1, max_size=3))
def test_nullspace_is_orthogonal_and_integral(rows):
    ns = eg.nullspace(rows, 3)
    assert len(ns) == 3 - eg.rank(rows)
    for v in ns:
        assert eg.is_integral(v)
        assert all(eg.dot(r, v) == 0 for r in rows)


@given(st.lists(st.lists(rationals(-3, 3, 3), min_size=2, max_size=2), min_size=2, max_size=2))
def test_inverse_roundtrip(M):
    if eg.det(M) == 0:
        return
    I = eg.matmul(M, eg.inverse(M))
    assert I == ((1, 0), (0, 1))


def test_affine_image_maps_vertices():
    U = ((1, 1), (0, 1))
    img = SQUARE.affine_image(U, (2, 0))
    assert sorted(eg.vertices(img)) == sorted(eg.vadd(eg.matvec(U, v), (2, 0)) for v in eg.vertices(SQUARE))


def test_hpolyhedron_dim_checks():
    with pytest.raises(DimMismatch):
        HPolyhedron(2, (((1,), 1),))
    with pytest.raises(DimMismatch):
        SQUARE.intersect(HPolyhedron(1, (((1,), 1),)))
