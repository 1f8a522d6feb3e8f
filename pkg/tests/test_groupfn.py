from fractions import Fraction as F
from math import floor

import pytest
from hypothesis import given, strategies as st

from latcut.cgf import gmi_split_1d
from latcut.errors import NotContinuous, NotPeriodic, NotSublinear, OriginValueNonzero
from latcut.exactgeo import HPolyhedron
from latcut.groupfn import (
    PwlComplexND,
    PwlPeriodic1D,
    additivity_domain,
    certify_nplus1_hypotheses,
    certify_two_slope_extreme,
    check_minimal,
    delta,
    in_additivity_domain,
    psi_from_pi,
    slope_values,
)

GRID = [F(k, 210) for k in range(211)]
FRAC = PwlPeriodic1D((0,), (0,), left=(1,))
THREE_SLOPE = PwlPeriodic1D((0, F(1, 4), F(1, 2), F(3, 4)), (0, F(3, 4), F(1, 4), 1))


def sample(f, q):
    """PWL interpolation of f on the grid k/q."""
    return PwlPeriodic1D(tuple(F(k, q) for k in range(q)), tuple(f(F(k, q)) for k in range(q)))


def test_gmi_minimal():
    _, pi = gmi_split_1d(F(2, 5))
    rep = check_minimal(pi, F(2, 5))
    assert rep.zero_on_lattice and rep.subadditive and rep.symmetric and rep.minimal


def test_tent_with_wrong_b_not_minimal():
    tent = PwlPeriodic1D((0, F(1, 2)), (0, 1))
    rep = check_minimal(tent, F(2, 5))
    assert not rep.minimal and not rep.symmetric
    p = rep.symmetric_violation[0]
    assert tent(p) + tent(F(2, 5) - p) != 1


def test_frac_not_symmetric_pointwise_but_rejected_as_discontinuous():
    assert FRAC(F(1, 5)) + FRAC(F(2, 5) - F(1, 5)) == F(2, 5)
    with pytest.raises(NotContinuous):
        check_minimal(FRAC, F(2, 5))
    step = PwlPeriodic1D((0, F(1, 2)), (0, 1), left=(1, 1), right=(1, 1))
    with pytest.raises(NotContinuous):
        check_minimal(step, F(1, 2))


def test_bad_breakpoints():
    with pytest.raises(NotPeriodic):
        PwlPeriodic1D((F(1, 2),), (0,))
    with pytest.raises(NotPeriodic):
        PwlPeriodic1D((0, 1), (0, 0))


def grid_subadditive(pi, q):
    # delta is linear on the triangles cut out by the knot grid, so a refinement of it suffices
    g = [F(k, 2 * q) for k in range(2 * q + 1)]
    return all(delta(pi, x, y) >= 0 for x in g for y in g)


def grid_symmetric(pi, b):
    return all(pi(x) + pi(b - x) == 1 for x in GRID)


@st.composite
def grid_pwl(draw):
    # knots on a grid dividing 210, so every arrangement vertex lies on GRID
    q = draw(st.sampled_from([2, 3, 5, 6, 7, 10]))
    vals = [F(0)] + [F(draw(st.integers(0, 12)), 12) for _ in range(q - 1)]
    return PwlPeriodic1D(tuple(F(k, q) for k in range(q)), tuple(vals)), q


@given(grid_pwl())
def test_subadditivity_matches_grid(data):
    pi, q = data
    assert check_minimal(pi, F(1, q)).subadditive == grid_subadditive(pi, q)


@given(grid_pwl(), st.integers(1, 9))
def test_symmetry_matches_grid(data, k):
    pi, q = data
    b = F(k % q or 1, q)
    assert check_minimal(pi, b).symmetric == grid_symmetric(pi, b)


def test_minimal_functions_properties():
    for pi, b in [(gmi_split_1d(F(2, 5))[1], F(2, 5)), (THREE_SLOPE, F(3, 4))]:
        assert check_minimal(pi, b).minimal
        assert all(0 <= pi(x) <= 1 for x in GRID)
        assert all(pi(b + w) == 1 for w in range(-3, 4))


def test_additivity_domain_gmi_half():
    _, pi = gmi_split_1d(F(1, 2))
    faces = additivity_domain(pi)
    for t in (F(0), F(1, 8), F(1, 4), F(1, 2)):
        assert in_additivity_domain(faces, (t, F(1, 2) - t))
    assert not in_additivity_domain(faces, (F(1, 4), F(1, 2)))


@given(grid_pwl(), st.integers(0, 60))
def test_additivity_domain_axes_and_symmetry(data, k):
    pi, q = data
    if not check_minimal(pi, F(1, q)).subadditive:
        return
    faces = additivity_domain(pi)
    y = F(k, 60)
    if pi(0) == 0:
        assert in_additivity_domain(faces, (0, y)) and in_additivity_domain(faces, (y, 0))
    swapped = sorted(tuple(sorted((v[1], v[0]) for v in f)) for f in faces)
    assert swapped == faces


def test_additivity_domain_of_frac_rejected():
    with pytest.raises(NotContinuous):
        additivity_domain(FRAC)


def test_decomposition_tightness():
    _, p1 = gmi_split_1d(F(1, 2))
    p2 = sample(lambda x: p1(3 * x), 6)
    pi = sample(lambda x: (p1(x) + p2(x)) / 2, 6)
    for f in (p1, p2, pi):
        assert check_minimal(f, F(1, 2)).minimal
    for face in additivity_domain(pi):
        pts = list(face) + [tuple(sum(v[i] for v in face) / len(face) for i in range(2))]
        for x, y in pts:
            assert delta(pi, x, y) == 0
            assert delta(p1, x, y) == 0 and delta(p2, x, y) == 0


def test_slope_values():
    _, pi = gmi_split_1d(F(2, 5))
    assert slope_values(pi) == {F(5, 2), F(-5, 3)}
    assert slope_values(THREE_SLOPE) == {3, -2, -4}
    saw = PwlPeriodic1D((0, F(1, 3), F(2, 3)), (0, F(1, 3), F(2, 3)), left=(1, F(1, 3), F(2, 3)))
    assert slope_values(saw) == {1} == slope_values(FRAC)


def test_two_slope_certificates():
    _, pi = gmi_split_1d(F(2, 5))
    c = certify_two_slope_extreme(pi, F(2, 5))
    assert c.extreme and c.slopes == 2
    assert certify_two_slope_extreme(FRAC, F(2, 5)).failed == ["not continuous"]
    c3 = certify_two_slope_extreme(THREE_SLOPE, F(3, 4))
    assert not c3.extreme and c3.failed == ["slopes=3"]
    tent = PwlPeriodic1D((0, F(1, 2)), (0, 1))
    assert "not minimal" in certify_two_slope_extreme(tent, F(2, 5)).failed


def test_psi_from_pi_1d():
    psi, pi = gmi_split_1d(F(2, 5))
    got = psi_from_pi(pi)
    for r in (F(1), F(-1), F(7, 3), F(-2, 9)):
        assert got((r,)) == psi((r,))
    v = PwlPeriodic1D((0, F(1, 2)), (0, F(3, 2)))
    assert psi_from_pi(v)((F(-2),)) == 6 and psi_from_pi(v)((F(1),)) == 3


def test_psi_from_pi_errors():
    with pytest.raises(OriginValueNonzero):
        psi_from_pi(PwlPeriodic1D((0, F(1, 2)), (1, 0)))
    concave = PwlPeriodic1D((0, F(1, 4), F(3, 4)), (0, -F(1, 4), -F(1, 4)))
    with pytest.raises(NotSublinear):
        psi_from_pi(concave)


def _product_complex():
    """pi(x) = tent(x1), a 1D function embedded in 2D."""
    h = F(1, 2)
    cells = [(HPolyhedron.box((0, 0), (h, 1)), (2, 0), 0),
             (HPolyhedron.box((h, 0), (1, 1)), (-2, 0), 2)]
    return PwlComplexND(2, cells)


def test_complex_embedded_1d_refused():
    pi = _product_complex()
    b = (F(1, 2), F(0))
    assert check_minimal(pi, b).minimal
    c = certify_nplus1_hypotheses(pi, b)
    assert not c.extreme and "not genuinely 2-dimensional" in c.failed


def test_complex_discontinuity_detected():
    cells = [(HPolyhedron.box((0, 0), (F(1, 2), 1)), (2, 0), 0),
             (HPolyhedron.box((F(1, 2), 0), (1, 1)), (-2, 0), 3)]
    with pytest.raises(NotContinuous):
        check_minimal(PwlComplexND(2, cells), (F(1, 2), 0))


def test_complex_non_minimal_refused():
    pi = _product_complex()
    c = certify_nplus1_hypotheses(pi, (F(1, 3), F(0)))
    assert not c.extreme and "not minimal" in c.failed


def test_complex_cover_required():
    cells = [(HPolyhedron.box((0, 0), (F(1, 2), 1)), (0, 0), 0)]
    with pytest.raises(NotPeriodic):
        check_minimal(PwlComplexND(2, cells), (F(1, 2), 0))


def test_nplus1_on_1d():
    _, pi = gmi_split_1d(F(2, 5))
    assert certify_nplus1_hypotheses(pi, F(2, 5)).extreme


def test_grid_agrees_on_wrap_around():
    # periodic evaluation
    _, pi = gmi_split_1d(F(2, 5))
    for x in GRID[:20]:
        assert pi(x) == pi(x + 3) == pi(x - floor(x) - 2)
