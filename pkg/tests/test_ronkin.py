import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import example, given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from amoebas.amoeba import CHAMBERS, membership, quartic_params, sample_chamber_points
from amoebas.elliptic import complete_K
from amoebas.errors import BadCoefficients, NotInChamber, OutOfRange
from amoebas.ronkin import (
    dilog_integral_identity,
    elliptic_identity_terms,
    grad_2var,
    grad_ronkin,
    grad_x_from_limits,
    hessian_2var,
    hessian_closed,
    hessian_quadrature,
    mahler_1zawat,
    mahler_1zw,
    mixed_pair,
    normal_form_params,
    ronkin_1var,
    ronkin_1var_quadrature,
    ronkin_2var_closed,
    ronkin_2var_quadrature,
    ronkin_3var,
    ronkin_3var_quadrature,
)
from amoebas.suites import random_identity_triple

LH = math.log(0.5)
coord = st.floats(min_value=-3, max_value=3)
point = st.tuples(coord, coord, coord)


def mahler_1zaw_reference(a):
    """m(1 + z + a w + a t) from mpmath trilogarithms."""
    if a <= 1:
        return float(2 / mp.pi**2 * (mp.polylog(3, a) - mp.polylog(3, -a)))
    return float(mp.log(a) + 2 / mp.pi**2 * (mp.polylog(3, 1 / a) - mp.polylog(3, -1 / a)))


def torus_average(p, coeffs=(1, 1, 1), n=512):
    """N of 1 + a1 z + a2 w + a3 t by the trapezoid rule over (w, t), z done by Jensen."""
    a1, a2, a3 = coeffs
    phi = 2 * np.pi * np.arange(n) / n
    w = a2 * np.exp(p[1] + 1j * phi)[:, None]
    t = a3 * np.exp(p[2] + 1j * phi)[None, :]
    inner = np.log(np.abs(1 + w + t))
    return float(np.maximum(inner, p[0] + math.log(abs(a1))).mean())


# --- one and two variables -------------------------------------------------------


def test_ronkin_1var_examples():
    assert ronkin_1var([2], 1, 0.0) == pytest.approx(math.log(2))
    assert ronkin_1var([2], 1, math.log(4)) == pytest.approx(math.log(4))
    ref = ronkin_1var_quadrature([1, 3], 1, math.log(2))
    assert ronkin_1var([1, 3], 1, math.log(2)) == pytest.approx(ref, abs=1e-10)
    with pytest.raises(BadCoefficients):
        ronkin_1var([1], 0, 0.0)


@given(st.lists(st.complex_numbers(min_magnitude=0.1, max_magnitude=5), min_size=1, max_size=3),
       st.floats(min_value=-2, max_value=2))
def test_ronkin_1var_is_jensen(roots, x):
    if min(abs(abs(b) - math.exp(x)) for b in roots) < 1e-3:
        return
    assert ronkin_1var(roots, 2.0, x) == pytest.approx(ronkin_1var_quadrature(roots, 2.0, x), abs=1e-9)


def test_mahler_1zw_constant():
    ref = float(3 * mp.sqrt(3) / (4 * mp.pi) * mp.nsum(lambda n: 1 / (3 * n + 1) ** 2 - 1 / (3 * n + 2) ** 2, [0, mp.inf]))
    assert ronkin_2var_closed(0, 0) == pytest.approx(ref, rel=1e-14)
    assert mahler_1zw() == pytest.approx(0.3230659472, abs=1e-10)
    assert ronkin_2var_quadrature(0, 0) == pytest.approx(ref, abs=1e-10)


def test_ronkin_2var_outside_and_examples():
    assert ronkin_2var_closed(5, 0) == 5
    assert ronkin_2var_closed(-5, -6) == 0
    assert ronkin_2var_closed(0.1, 0.2) == pytest.approx(ronkin_2var_quadrature(0.1, 0.2), abs=1e-8)


@given(st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3))
def test_dilog_closed_form_matches_quadrature(x, y):
    assert ronkin_2var_closed(x, y) == pytest.approx(ronkin_2var_quadrature(x, y), abs=1e-9)


@given(st.floats(min_value=-2, max_value=2), st.floats(min_value=-2, max_value=2))
def test_2var_gradient_and_hessian(x, y):
    h = 1e-5
    fd = [
        (ronkin_2var_closed(x + h, y) - ronkin_2var_closed(x - h, y)) / (2 * h),
        (ronkin_2var_closed(x, y + h) - ronkin_2var_closed(x, y - h)) / (2 * h),
    ]
    assert_allclose(grad_2var(x, y), fd, atol=1e-7)
    H = hessian_2var(x, y)
    v = sorted([1, math.exp(x), math.exp(y)])
    if v[2] < (v[0] + v[1]) * (1 - 1e-3):
        assert np.linalg.det(H) == pytest.approx(1 / math.pi**2, rel=1e-9)
        assert H[0, 1] == pytest.approx(H[1, 0], rel=1e-9)


# --- three variables ------------------------------------------------------------------


def test_ronkin_3var_examples():
    assert ronkin_3var_quadrature((-40, -40, -40)) == pytest.approx(0, abs=1e-12)
    assert ronkin_3var_quadrature((40, 1, 2)) == 40
    assert ronkin_3var_quadrature((0, 0, 0)) == pytest.approx(float(7 * mp.zeta(3) / (2 * mp.pi**2)), abs=1e-12)
    assert ronkin_3var_quadrature((0, LH, LH)) == pytest.approx(mahler_1zaw_reference(0.5), abs=1e-12)
    assert ronkin_3var_quadrature((0, 0, 0)) == pytest.approx(0.4262783988, abs=1e-10)


@pytest.mark.parametrize("a", [0.25, 0.5, 1, 2, 4])
def test_mahler_trilog_forms(a):
    assert mahler_1zawat(a) == pytest.approx(mahler_1zaw_reference(a), abs=1e-14)
    la = math.log(a)
    assert ronkin_3var_quadrature((0, la, la)) == pytest.approx(mahler_1zaw_reference(a), abs=1e-10)
    with pytest.raises(OutOfRange):
        mahler_1zawat(0)


def test_ronkin_3var_matches_torus_average(rng):
    for p in rng.uniform(-1.5, 1.5, (4, 3)):
        assert ronkin_3var_quadrature(p) == pytest.approx(torus_average(p), abs=2e-5)


def test_translation_by_coefficients(rng):
    for _ in range(4):
        p = rng.uniform(-1, 1, 3)
        a = rng.uniform(0.3, 3, 3) * np.exp(1j * rng.uniform(0, 2 * np.pi, 3))
        assert ronkin_3var(p, coeffs=a) == pytest.approx(torus_average(p, a), abs=2e-5)


@given(point)
def test_ronkin_is_symmetric(p):
    x, y, u = p
    v = ronkin_3var_quadrature(p)
    assert ronkin_3var_quadrature((y, u, x)) == pytest.approx(v, abs=1e-9)
    assert ronkin_3var_quadrature((x, u, y)) == pytest.approx(v, abs=1e-9)


# --- gradient ------------------------------------------------------------------------------


def test_gradient_outside():
    assert_allclose(grad_ronkin((-40, -40, -40)).grad, [0, 0, 0])
    assert_allclose(grad_ronkin((40, 0, 0)).grad, [1, 0, 0])
    assert grad_ronkin((40, 0, 0)).method == "exact"


def test_gradient_at_origin_matches_finite_differences():
    h = 1e-4
    g = grad_ronkin((0, 0, 0)).grad
    assert g[0] == pytest.approx(g[1], abs=1e-12) and g[1] == pytest.approx(g[2], abs=1e-12)
    fd = (ronkin_3var_quadrature((h, 0, 0), tol=1e-12) - ronkin_3var_quadrature((-h, 0, 0), tol=1e-12)) / (2 * h)
    assert g[0] == pytest.approx(fd, abs=1e-5)


@given(point)
@example((0.0, 1.0, 1.0000000001))
@example((1e-12, -0.5, -0.499999999))
@example((1e-9, 2.0, 2.000000001))
def test_table_and_angle_gradients_agree(p):
    a = grad_ronkin(p, "table").grad
    b = grad_ronkin(p, "angle").grad
    assert_allclose(a, b, atol=1e-8)


@given(point)
def test_gradient_in_newton_polytope(p):
    r = grad_ronkin(p)
    if r.label.inside and r.label.contour_distance > 1e-6 and min(p) > -20:
        assert np.all(r.grad > 0) and np.all(r.grad < 1)
        assert r.grad.sum() < 1


def test_limit_table_misses_full_circle_strip():
    # in (+,-,-) radii below e^x - 1 see the whole circle inside |1 + z| > ...
    p = (math.log(2), 0.0, 0.0)
    assert membership(p).signs == ("+", "-", "-")
    ex, ey, eu = 2.0, 1.0, 1.0
    psi = math.acos(((ex - 1) ** 2 - ey * ey - eu * eu) / (2 * ey * eu))
    full = grad_ronkin(p).grad[0]
    assert full - grad_x_from_limits(p) == pytest.approx((math.pi - psi) / math.pi, abs=1e-10)
    assert full == pytest.approx(grad_ronkin(p, "angle").grad[0], abs=1e-10)


# --- Hessian ---------------------------------------------------------------------------------


def test_normal_form_example():
    nf = normal_form_params((LH, LH, LH))
    assert nf.g == pytest.approx(math.sqrt(2))
    assert nf.k2 == pytest.approx(0.84375)
    assert nf.chamber == ("+", "+", "+")
    H = hessian_closed((LH, LH, LH))
    assert H[0, 0] == pytest.approx(2 * math.sqrt(2) * 0.25 / math.pi**2 * complete_K(0.84375), rel=1e-14)
    assert_allclose(H, hessian_quadrature((LH, LH, LH)), rtol=1e-7)


def test_normal_form_alpha2_relation(rng):
    for signs in [("+", "+", "+"), ("+", "-", "-")]:
        for p in sample_chamber_points(signs, 3, rng):
            nf = normal_form_params(p)
            ex, ey, eu = np.exp(p)
            assert nf.alpha2_2 == pytest.approx(nf.alpha1_2 * (ey - eu) ** 2 / (1 - ex) ** 2, rel=1e-12)
            for v in (nf.k2, nf.alpha1_2, nf.alpha2_2):
                assert 0 < v < 1


def test_singular_locus_limit_form():
    # e^y = e^u: Q3 drops out and Q1 becomes e^{2x} + e^{2y} - 1 - e^{2u} = e^{2x} - 1
    p = (0.3, -0.5, -0.5)
    nf = normal_form_params(p)
    assert nf.limit_form and nf.Q3 == 0.0
    assert nf.Q1 == pytest.approx(math.exp(0.6) - 1, rel=1e-14)
    assert_allclose(hessian_closed(p), hessian_quadrature(p), rtol=1e-10)
    # and the closed form is continuous across the locus
    for eps in (1e-5, 1e-8):
        assert_allclose(hessian_closed((0.3, -0.5, -0.5 + eps)), hessian_closed(p), rtol=1e-4)
    # e^x = 1 with e^y != e^u
    q = (0.0, -0.2, -0.9)
    assert membership(q).is_chamber
    assert_allclose(hessian_closed(q), hessian_quadrature(q), rtol=1e-10)


@pytest.mark.parametrize("signs", CHAMBERS)
def test_closed_hessian_matches_quadrature(signs, rng):
    for p in sample_chamber_points(signs, 5, rng):
        Hc, Hq = hessian_closed(p), hessian_quadrature(p)
        assert_allclose(np.diag(Hc), np.diag(Hq), rtol=1e-9)
        assert_allclose(Hc, Hq, rtol=1e-8, atol=1e-12 * np.abs(Hq).max())


def test_hessian_matches_gradient_differences(rng):
    h = 1e-4
    for signs in CHAMBERS:
        p = sample_chamber_points(signs, 1, rng, margin=0.05)[0]
        H = hessian_quadrature(p)
        for i in range(3):
            e = np.zeros(3)
            e[i] = h
            fd = (grad_ronkin(p + e).grad - grad_ronkin(p - e).grad) / (2 * h)
            assert_allclose(H[:, i], fd, rtol=1e-4, atol=1e-7)


@given(point)
def test_hessian_is_symmetric_and_psd(p):
    if not membership(p, tol=1e-6).is_chamber:
        return
    a, b = mixed_pair(p)
    assert a == pytest.approx(b, rel=1e-8)
    assert np.linalg.eigvalsh(hessian_closed(p)).min() >= -1e-10


def test_hessian_needs_chamber():
    with pytest.raises(NotInChamber):
        hessian_closed((0, 0, 0))
    with pytest.raises(NotInChamber):
        hessian_quadrature((-9, -9, -9))
    with pytest.raises(NotInChamber):
        normal_form_params((9, 0, 0))


def test_quartic_sign_and_interval():
    q = quartic_params((0.2, 0.1, -0.4))
    c0, c1 = max(q.C, q.D), min(q.A, q.B)
    s = 0.5 * (c0 + c1)
    assert (s - q.A) * (s - q.B) * (s - q.C) * (s - q.D) > 0


# --- identities ------------------------------------------------------------------------------


def test_dilog_identity_values():
    lhs, rhs = dilog_integral_identity(LH)
    ref = float(mp.polylog(2, -0.5) - mp.polylog(2, 0.5))
    assert lhs == pytest.approx(ref, abs=1e-14)
    assert rhs == pytest.approx(ref, abs=1e-12)
    assert ref == pytest.approx(-1.0306547334, abs=1e-10)
    lhs, rhs = dilog_integral_identity(-30)
    assert abs(lhs) <= 1e-12 and abs(rhs) <= 1e-12
    lhs, rhs = dilog_integral_identity(math.log(0.9))
    assert lhs == pytest.approx(rhs, abs=1e-8)
    with pytest.raises(OutOfRange):
        dilog_integral_identity(0.0)


def test_elliptic_identity(rng):
    for _ in range(20):
        terms = elliptic_identity_terms(*random_identity_triple(rng))
        assert abs(math.fsum(terms)) <= 1e-8 * max(abs(t) for t in terms)
    with pytest.raises(NotInChamber):
        elliptic_identity_terms(1.5, 0.1, 0.1)
    with pytest.raises(NotInChamber):
        elliptic_identity_terms(0.2, 0.2, 0.2)
