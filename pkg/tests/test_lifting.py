import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import rvec
from latcut import exactgeo as eg
from latcut.cgf import MaxForm, gauge_from_polyhedron, gmi_split_1d
from latcut.errors import InputError, NonCoerciveDirection, NotOnFacet, NotUnimodular, RankDeficient
from latcut.exactgeo import HPolyhedron, IntBox
from latcut.groupfn import certify_nplus1_hypotheses, check_minimal
from latcut.latticefree import (
    QUAD,
    SPLIT,
    TAGS,
    TYPE1,
    TYPE2,
    TYPE3,
    SFreeScene,
    SSpec,
    make_canonical,
    random_scene,
)
from latcut.lifting import (
    TranslationGroup,
    coproduct,
    covering_fraction,
    lifting_complex,
    lifting_region,
    pyramid_canonical,
    spindle_from_rows,
    translation_group,
    trivial_lifting,
    trivial_lifting_certified,
)

HALF = F(1, 2)
Z2 = TranslationGroup(2, ((1, 0), (0, 1)))


def gmi_scene(f=F(2, 5)):
    K = HPolyhedron(1, (((1,), f), ((-1,), 1 - f)))
    return SFreeScene(SSpec(1, (f,)), K, IntBox.cube(1, 10))


def test_translation_groups():
    assert translation_group(SSpec(2, (HALF, HALF))).basis == ((1, 0), (0, 1))
    half_plane = HPolyhedron(2, (((-1, 0), 0),))  # x1 >= 0
    assert translation_group(SSpec(2, (HALF, HALF), half_plane)).basis == ((0, 1),)
    quadrant = HPolyhedron(2, (((-1, 0), 0), ((0, -1), 0)))
    assert translation_group(SSpec(2, (HALF, HALF), quadrant)).rank == 0


def test_translation_group_membership():
    W = TranslationGroup(2, ((1, 1),))
    assert W.contains((3, 3)) and not W.contains((1, 0)) and not W.contains((HALF, HALF))
    with pytest.raises(InputError):
        TranslationGroup(2, ((1, 0), (2, 0)))


def test_gmi_spindles():
    region = lifting_region(gmi_scene())
    bases = sorted((eg.bounding_box(t.base)) for t in region.spindles)
    assert bases == [((F(-3, 5),), (0,)), ((0,), (F(2, 5),))]


def test_not_on_facet():
    psi = gauge_from_polyhedron(make_canonical(TYPE1).K)
    with pytest.raises(NotOnFacet):
        spindle_from_rows(psi.rows, (0, 0), 0)


def test_region_counts():
    tri = lifting_region(make_canonical(TYPE1))
    assert len(tri.full_spindles()) == 3
    quad = lifting_region(make_canonical(QUAD))
    assert len(quad.full_spindles()) == 4


@pytest.mark.parametrize("kind", TAGS)
def test_eps_ball_inside_region(kind):
    rng = random.Random(kind)
    region = lifting_region(make_canonical(kind))
    assert region.eps > 0
    for _ in range(200):
        r = tuple(F(rng.randint(-1000, 1000), 1000) * region.eps for _ in range(2))
        assert region.contains(r)


def test_trivial_lifting_gmi():
    psi, pi = gmi_split_1d(F(2, 5))
    W = TranslationGroup(1, ((1,),))
    for k in range(-10, 11):
        p = F(k, 7)
        assert trivial_lifting(psi, W, (p,)) == pi(p)


def test_trivial_lifting_certificate_window():
    psi, _ = gmi_split_1d(F(2, 5))
    W = TranslationGroup(1, ((1,),))
    lv = trivial_lifting_certified(psi, W, (F(4, 5),))
    assert lv.value == F(1, 3) and lv.w == (-1,)
    assert (-1,) in set(lv.window.points())


@given(st.sampled_from(TAGS), st.integers(0, 500), rvec(2, lo=-3, hi=3, max_den=6))
def test_lifting_below_gauge_and_periodic(kind, seed, p):
    sc = random_scene(kind, random.Random(seed))
    psi = gauge_from_polyhedron(sc.K)
    v = trivial_lifting(psi, Z2, p)
    assert 0 <= v <= psi(p)
    assert trivial_lifting(psi, Z2, eg.vadd(p, (2, -1))) == v
    # brute-force minimum over a box of translations
    brute = min(psi(eg.vadd(p, w)) for w in itertools.product(range(-12, 13), repeat=2))
    assert v == brute


@pytest.mark.parametrize("kind", TAGS)
def test_lifting_equals_gauge_on_spindles(kind):
    sc = make_canonical(kind)
    region = lifting_region(sc)
    rng = random.Random(1)
    for t in region.full_spindles():
        V = eg.vertices(eg.fundamental_region(t.base)) if t.base.lineality else eg.vertices(t.base)
        for _ in range(5):
            wts = [F(rng.randint(1, 9)) for _ in V]
            tot = sum(wts)
            r = tuple(sum(w * v[i] for w, v in zip(wts, V)) / tot for i in range(2))
            assert trivial_lifting(region.psi, Z2, r) == region.psi(r)


def test_non_coercive_direction():
    with pytest.raises(NonCoerciveDirection):
        trivial_lifting(MaxForm(((1,),)), TranslationGroup(1, ((1,),)), (HALF,))


def test_rank_deficient_cover():
    region = lifting_region(make_canonical(TYPE1))
    region.W = TranslationGroup(2, ())
    with pytest.raises(RankDeficient):
        covering_fraction(region)


@pytest.mark.parametrize("kind", [SPLIT, TYPE1, TYPE2, QUAD])
def test_covering_holds(kind):
    assert covering_fraction(lifting_region(make_canonical(kind))) == 1


def test_type3_default_does_not_cover():
    assert covering_fraction(lifting_region(make_canonical(TYPE3))) == F(244, 315)


def _covered(region, p):
    return any(region.contains(eg.vadd(p, w)) for w in itertools.product(range(-6, 7), repeat=2))


@pytest.mark.parametrize("kind,seed", [(TYPE3, 3), (QUAD, 5), (TYPE3, 11), (TYPE2, 2)])
def test_covering_against_sampling(kind, seed):
    region = lifting_region(random_scene(kind, random.Random(seed)))
    frac = covering_fraction(region)
    N = 24
    hits = sum(_covered(region, (F(i, N) + F(1, 2 * N), F(j, N) + F(1, 2 * N)))
               for i in range(N) for j in range(N))
    assert abs(F(hits, N * N) - frac) <= F(1, 8)
    if frac == 1:
        assert hits == N * N


def test_coproduct_of_intervals_is_diamond():
    I = HPolyhedron(1, (((1,), HALF), ((-1,), HALF)))
    D = coproduct(I, I, HALF)
    assert set(D.rows) == {(s, 1) for s in itertools.product((-1, 1), repeat=2)}
    with pytest.raises(InputError):
        coproduct(I, I, 1)


def test_pyramid():
    P = pyramid_canonical(2)
    assert sorted(eg.vertices(P)) == [(0, 0), (0, 2), (2, 0)]
    with pytest.raises(NotUnimodular):
        pyramid_canonical(2, U=[[2, 0], [0, 1]])
    with pytest.raises(NotUnimodular):
        pyramid_canonical(2, z=(HALF, 0))
    P3 = pyramid_canonical(3, U=[[1, 1, 0], [0, 1, 0], [0, 0, 1]], z=(1, 0, -1))
    assert len(eg.vertices(P3)) == 4 and eg.integer_points(P3, IntBox.cube(3, 6))


def test_sheared_pyramid_covers():
    P = pyramid_canonical(2, U=[[1, 2], [0, 1]], z=(1, -1))
    q = eg.vadd(eg.matvec([[1, 2], [0, 1]], (F(2, 3), F(2, 3))), (1, -1))
    K = P.translate(tuple(-x for x in q))
    S = SSpec(2, tuple(eg.frac_part(-x) for x in q))
    sc = SFreeScene(S, K, IntBox.cube(2, 12))
    assert covering_fraction(lifting_region(sc)) == 1


def test_type1_complex_is_minimal_and_extreme():
    sc = make_canonical(TYPE1)
    pi = lifting_complex(lifting_region(sc))
    assert check_minimal(pi, sc.S.b).minimal
    cert = certify_nplus1_hypotheses(pi, sc.S.b)
    assert cert.extreme and cert.slopes == 3
    rng = random.Random(0)
    for _ in range(30):
        p = tuple(F(rng.randint(0, 60), 60) for _ in range(2))
        assert pi(p) == trivial_lifting(gauge_from_polyhedron(sc.K), Z2, p)


def test_complex_refused_without_cover():
    with pytest.raises(InputError):
        lifting_complex(lifting_region(make_canonical(TYPE3)))
