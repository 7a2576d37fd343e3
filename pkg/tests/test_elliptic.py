import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from amoebas.elliptic import (
    E_AT_UNIT_MODULUS,
    carlson_rf,
    carlson_rj,
    complete_E,
    complete_K,
    complete_Pi,
    legendre_reduce,
    quartic_integral,
)
from amoebas.errors import (
    BadOrdering,
    DivergentIntegral,
    DomainError,
    ModulusOutOfRange,
    PoleOnInterval,
    UnsupportedCase,
)
from amoebas.suites import quartic_quadrature, random_quadruple

pos = st.floats(min_value=1e-3, max_value=50.0)
k2s = st.floats(min_value=0.0, max_value=0.999)


@given(pos, pos, pos)
def test_rf_matches_mpmath(x, y, z):
    assert_allclose(carlson_rf(x, y, z), float(mp.elliprf(x, y, z)), rtol=2e-15)


@given(pos, pos, pos, pos)
def test_rj_matches_mpmath(x, y, z, p):
    assert_allclose(carlson_rj(x, y, z, p), float(mp.elliprj(x, y, z, p)), rtol=5e-15)


@given(pos, pos, pos, st.floats(min_value=0.1, max_value=10.0))
def test_rf_is_symmetric_and_homogeneous(x, y, z, lam):
    v = carlson_rf(x, y, z)
    assert_allclose(carlson_rf(z, x, y), v, rtol=1e-15)
    assert_allclose(carlson_rf(lam * x, lam * y, lam * z), v / math.sqrt(lam), rtol=1e-14)


def test_rf_rj_vectorize():
    x = np.array([0.0, 1.0, 2.0])
    out = carlson_rj(x, 1.0, 2.0, 3.0)
    assert out.shape == (3,)
    assert_allclose(out, [float(mp.elliprj(v, 1, 2, 3)) for v in x], rtol=1e-15)


def test_rf_errors():
    with pytest.raises(DivergentIntegral):
        carlson_rf(0.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        carlson_rf(-1.0, 1.0, 1.0)


@given(k2s)
def test_complete_integrals_match_mpmath(k2):
    assert_allclose(complete_K(k2), float(mp.ellipk(k2)), rtol=4e-15)
    assert_allclose(complete_E(k2), float(mp.ellipe(k2)), rtol=4e-15)


@given(st.floats(min_value=-5.0, max_value=0.99), k2s)
def test_complete_pi_matches_mpmath(a2, k2):
    assert_allclose(complete_Pi(a2, k2), float(mp.ellippi(a2, k2)), rtol=1e-14)


def test_special_values():
    assert complete_K(0.0) == pytest.approx(math.pi / 2, rel=1e-16)
    assert complete_E(0.0) == pytest.approx(math.pi / 2, rel=1e-16)
    assert complete_Pi(0.0, 0.3) == pytest.approx(complete_K(0.3), rel=1e-15)
    assert E_AT_UNIT_MODULUS == 1.0
    # Legendre relation at k^2 = 1/2: 2 E K - K^2 = pi / 2
    K, E = complete_K(0.5), complete_E(0.5)
    assert 2 * E * K - K * K == pytest.approx(math.pi / 2, rel=1e-14)


def test_modulus_and_characteristic_errors():
    with pytest.raises(ModulusOutOfRange):
        complete_K(1.0)
    with pytest.raises(ModulusOutOfRange):
        complete_K(-0.1)
    with pytest.raises(UnsupportedCase):
        complete_Pi(1.5, 0.2)


def test_legendre_reduce_example():
    r = legendre_reduce(4, 3, 2, 1, 0)
    assert r.k2 == pytest.approx(0.75)
    assert r.value() == pytest.approx(quartic_quadrature(4, 3, 2, 1, 0), rel=1e-12)


@pytest.mark.parametrize("j", [-1, 0, 1])
def test_legendre_reduce_round_trip(j, rng):
    for _ in range(30):
        quad = random_quadruple(rng)
        if j == -1 and 0.0 in quad:
            continue
        ref = quartic_quadrature(*quad, j)
        assert_allclose(legendre_reduce(*quad, j).value(), ref, rtol=1e-11)
        assert_allclose(quartic_integral(*quad, j), ref, rtol=1e-11)


def test_j0_integral_positive():
    assert legendre_reduce(5, 2, 1, -3, 0).value() > 0


def test_reduction_errors():
    with pytest.raises(BadOrdering):
        legendre_reduce(1, 2, 3, 4, 0)
    with pytest.raises(PoleOnInterval):
        legendre_reduce(4, 3, -1, -2, -1)
    with pytest.raises(PoleOnInterval):
        legendre_reduce(4, 3, 2, 0, -1)


def test_stable_j_minus_one_at_zero_root():
    # d = 0 is fine for the direct evaluator; compare with the limit d -> 0+
    ref = quartic_quadrature(4.0, 3.0, 2.0, 0.0, -1)
    assert_allclose(quartic_integral(4.0, 3.0, 2.0, 0.0, -1), ref, rtol=1e-12)
    near = legendre_reduce(4.0, 3.0, 2.0, 1e-9, -1).value()
    assert abs(near - ref) < 1e-6
