import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclides.errors import DegenerateConfiguration, DomainError, OnTorus
from cyclides.geometry import (
    MaxwellRatio,
    RatioTriple,
    ShapeClass,
    R_to_alpha,
    alpha_to_R,
    canonicalize,
    classify_center,
    dual_params,
    family_circle,
    family_point,
    maxwell_from_p1,
    p1_ratio_inside,
    p1_ratio_outside,
    p2_from_p1,
    phi,
    phi_inv,
    ratios_from_1d_inversions,
    shapes_equal,
)

SQ2 = math.sqrt(2.0)
SQ3 = math.sqrt(3.0)


def triple(*v):
    return RatioTriple.normalized(*v)


def test_outside_ratio_examples():
    for R in (1.3, 2.0, 7.0):
        assert p1_ratio_outside(R, 0.0).isclose(triple(1, 1, 2 * R), 1e-15)
    assert p1_ratio_outside(2, 0.5).isclose(triple(5.25, 1.25, 11), 1e-15)
    want = triple((SQ2 + 0.2) ** 2 - 1, (SQ2 - 0.2) ** 2 - 1, 2 * SQ2 * (2 - 0.04 - 1))
    assert p1_ratio_outside(SQ2, 0.2).isclose(want, 1e-14)


def test_inside_ratio_examples():
    assert p1_ratio_inside(2, SQ3).isclose(triple(6, 6, 8 * SQ3), 1e-14)
    want = triple((SQ2 - 1) * ((SQ2 + 1) ** 2 - 1), (SQ2 + 1) * (1 - (SQ2 - 1) ** 2), 4 * SQ2)
    assert p1_ratio_inside(SQ2, 1.0).isclose(want, 1e-14)
    assert all(v > 0 for v in p1_ratio_inside(2, 1.2).as_tuple())


def test_ratio_domains():
    with pytest.raises(DomainError):
        p1_ratio_outside(2, 1.0)
    with pytest.raises(DomainError):
        p1_ratio_inside(2, 0.5)
    with pytest.raises(DomainError):
        p1_ratio_outside(1.0, 0.0)


@pytest.mark.parametrize(
    "R,rho,branch",
    [(2, 0.0, "outside"), (2, 0.5, "outside"), (2, 1.2, "inside"), (SQ2, 0.2, "outside"), (SQ2, 1.0, "inside")],
)
def test_1d_inversions_agree_with_closed_triples(R, rho, branch):
    closed = p1_ratio_outside(R, rho) if branch == "outside" else p1_ratio_inside(R, rho)
    assert ratios_from_1d_inversions(R, rho, branch).isclose(closed, 1e-13)


def test_1d_inversion_branch_checked():
    with pytest.raises(DomainError):
        ratios_from_1d_inversions(2, 0.5, "inside")
    with pytest.raises(DomainError):
        ratios_from_1d_inversions(2, 0.5, "sideways")


def test_p2_examples():
    R = 3.0
    assert p2_from_p1(triple(1, 1, 2 * R)).isclose(triple(R + 1, R - 1, 0), 1e-15)
    assert p2_from_p1(triple(1, 0.5, 3)).isclose(triple(2.25, 0.75, 0.5), 1e-15)
    with pytest.raises(DegenerateConfiguration):
        p2_from_p1(triple(1, 0.5, 1.5))


def test_maxwell_examples():
    R = 2.5
    m = maxwell_from_p1(p1_ratio_outside(R, 0.0))
    assert m.max_difference(MaxwellRatio(1, 0, 1 / R)) < 1e-15
    # a = 5.5, f = 2, L - a = 3.25 for the triple 5.25 : 1.25 : 11
    m = maxwell_from_p1(p1_ratio_outside(2, 0.5))
    assert m.max_difference(MaxwellRatio(1, 4 / 11, 13 / 22)) < 1e-15


def test_maxwell_projective_invariance():
    t = p1_ratio_outside(1.7, 0.3)
    scaled = RatioTriple(7 * t.r1, 7 * t.r2, 7 * t.d)
    assert maxwell_from_p1(scaled).max_difference(maxwell_from_p1(t)) < 1e-15


def test_dual_examples():
    for rho in (0.0, 0.2, 0.7, 1.0):
        Rd, rhod = dual_params(SQ2, rho)
        assert Rd == pytest.approx(SQ2, rel=1e-15)
        assert rhod == pytest.approx((1 - rho) / (1 + rho), abs=1e-15)
    Rd, rhod = dual_params(SQ2, SQ2 - 1)
    assert rhod == pytest.approx(SQ2 - 1, rel=1e-14)
    Rd, rhod = dual_params(2, 0)
    assert (Rd, rhod) == pytest.approx((2 / SQ3, 1 / SQ3), rel=1e-15)
    with pytest.raises(DomainError):
        dual_params(2, 2.0)


@settings(max_examples=200, deadline=None)
@given(st.floats(1.001, 20.0), st.floats(0.0, 1.0))
def test_dual_involution(R, t):
    rho = t * math.sqrt(R * R - 1)
    R2, rho2 = dual_params(*dual_params(R, rho))
    assert R2 == pytest.approx(R, rel=1e-12)
    assert rho2 == pytest.approx(rho, rel=1e-12, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(1.01, 20.0), st.floats(0.0, 0.999))
def test_inside_of_dual_matches_outside(R, t):
    rho = t * (R - 1)
    inside = p1_ratio_inside(*dual_params(R, rho))
    assert inside.isclose(p1_ratio_outside(R, rho), 1e-11)


def test_classify_examples():
    assert classify_center([0.3, 0, 0], 2) == pytest.approx(0.3, rel=1e-15)
    assert classify_center([0, 0, 5], 2) == 0.0
    assert classify_center([3 / 0.3, 0, 0], 2) == pytest.approx(0.3, rel=1e-14)
    assert classify_center([3.0, 0, 0], 2) == 1.0
    with pytest.raises(OnTorus):
        classify_center([3.0, 0, 0], 2, strict=True)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(1.01, 10.0),
    st.floats(0.01, 0.99),
    st.floats(0.0, 2 * math.pi),
    st.floats(0.0, 2 * math.pi),
)
def test_classify_constant_on_family_tori(R, frac, t, theta):
    rho = frac * math.sqrt(R * R - 1)
    if abs(rho - (R - 1)) < 1e-6:
        return
    p = family_point(rho, R, t, theta)
    if np.linalg.norm(p[:2]) < 1e-9:
        return
    assert classify_center(p, R) == pytest.approx(rho, rel=1e-9, abs=1e-12)


def test_family_circle_endpoints():
    c, r = family_circle(0.3, 2)
    assert c - r == pytest.approx(0.3)
    assert c + r == pytest.approx(10.0)


def test_canonicalize_examples():
    assert canonicalize(2, 0.5) == ShapeClass(2, 0.5)
    assert canonicalize(2, 1.0).is_round_sphere
    s = canonicalize(2, 1.5)
    assert s.R == pytest.approx(2 / SQ3, rel=1e-15)
    want = (1 / SQ3) * (SQ3 - 1.5) / (SQ3 + 1.5)
    assert s.rho == pytest.approx(want, rel=1e-13)
    assert 0 <= s.rho < s.R - 1


def test_phi_examples():
    for R in (1.5, 2.0, 9.0):
        assert phi(R, 0.0) == pytest.approx((0.0, 1 / R), abs=1e-15)
    a, b = phi(2, 0.5)
    # b = (4 + 0.25 - 1) / (2 (4 - 0.25 - 1))
    assert (a, b) == pytest.approx((4 / 11, 13 / 22), rel=1e-15)
    assert phi_inv(a, b) == pytest.approx((2, 0.5), rel=1e-13)
    assert phi_inv(0.0, 0.5) == pytest.approx((2.0, 0.0), abs=1e-15)


def test_phi_matches_maxwell():
    m = maxwell_from_p1(p1_ratio_outside(2, 0.5))
    assert (m.f, m.l_minus_a) == pytest.approx(phi(2, 0.5), rel=1e-15)


def test_phi_image_in_target():
    rng = np.random.default_rng(1)
    for _ in range(500):
        R = 1 + 10 ** rng.uniform(-2, 1)
        rho = rng.uniform(0, 1) * (R - 1)
        a, b = phi(R, rho)
        assert 0 <= a < 1 and a < b < 1


def test_phi_inv_domain():
    with pytest.raises(DomainError):
        phi_inv(0.5, 0.4)
    with pytest.raises(DomainError):
        phi_inv(0.5, 1.0)


def test_alpha_conversion():
    assert alpha_to_R(math.pi / 4) == pytest.approx(SQ2, rel=1e-15)
    assert alpha_to_R(math.pi / 6) == pytest.approx(2.0, rel=1e-15)
    assert R_to_alpha(alpha_to_R(0.3)) == pytest.approx(0.3, rel=1e-14)
    with pytest.raises(DomainError):
        alpha_to_R(math.pi / 2)


def test_shapes_equal_examples():
    s = ShapeClass(2, 0.5)
    assert shapes_equal(s, canonicalize(*dual_params(*dual_params(2, 0.5))))
    dual = canonicalize(*dual_params(2, 0.5))
    assert shapes_equal(canonicalize(*dual_params(dual.R, dual.rho)), s)
    other = ShapeClass(2, 0.6)
    assert not shapes_equal(s, other)
    assert s.maxwell.max_difference(other.maxwell) > 1e-12
    assert shapes_equal(ShapeClass.round_sphere(2), ShapeClass.round_sphere(5))
    assert not shapes_equal(ShapeClass.round_sphere(2), s)
