r"""Complete elliptic integrals via Carlson's symmetric forms.

All public functions accept scalars or numpy arrays (broadcast together)
and return a float for scalar input. The duplication iterations are run
on whole arrays; iterating past convergence for some entries is harmless
because the scaled deviations are recomputed from the original arguments.

The Legendre-form integrals are

.. math::

    K(k) = \int_0^{\pi/2} \frac{d\theta}{\sqrt{1-k^2\sin^2\theta}}, \qquad
    \Pi(\alpha^2, k) = \int_0^{\pi/2}
        \frac{d\theta}{(1-\alpha^2\sin^2\theta)\sqrt{1-k^2\sin^2\theta}},

and every function here takes the squared modulus ``k2`` rather than ``k``.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import special

from .errors import (
    BadOrdering,
    DivergentIntegral,
    DomainError,
    ModulusOutOfRange,
    PoleOnInterval,
    UnsupportedCase,
)

__all__ = [
    "E_AT_UNIT_MODULUS",
    "ReducedIntegral",
    "carlson_rf",
    "carlson_rj",
    "complete_E",
    "complete_K",
    "complete_Pi",
    "legendre_reduce",
    "quartic_integral",
]

# E(k) at k^2 = 1, where the integrand is |cos(theta)|.
E_AT_UNIT_MODULUS = 1.0


def _as_arrays(*args):
    arrs = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in args))
    scalar = all(np.ndim(a) == 0 for a in args)
    return [np.array(a, dtype=float) for a in arrs], scalar


def _out(value, scalar):
    return float(value) if scalar else value


def carlson_rf(x, y, z):
    r"""Carlson's symmetric integral of the first kind.

    .. math::

        R_F(x,y,z) = \frac12\int_0^\infty \frac{dt}{\sqrt{(t+x)(t+y)(t+z)}}

    Raises :class:`DivergentIntegral` if two or more arguments vanish.
    """
    (x, y, z), scalar = _as_arrays(x, y, z)
    if np.any((x < 0) | (y < 0) | (z < 0)):
        raise DomainError("R_F needs nonnegative arguments")
    if np.any((x == 0).astype(int) + (y == 0) + (z == 0) >= 2):
        raise DivergentIntegral("R_F diverges with two or more zero arguments")

    val = special.elliprf(x, y, z)
    return _out(val, scalar)


def carlson_rj(x, y, z, p):
    r"""Carlson's symmetric integral of the third kind, for ``p > 0``.

    .. math::

        R_J(x,y,z,p) = \frac32\int_0^\infty
            \frac{dt}{(t+p)\sqrt{(t+x)(t+y)(t+z)}}
    """
    (x, y, z, p), scalar = _as_arrays(x, y, z, p)
    if np.any(p <= 0):
        raise UnsupportedCase("R_J with p <= 0 (Cauchy principal value) is not supported")
    if np.any((x < 0) | (y < 0) | (z < 0)):
        raise DomainError("R_J needs nonnegative x, y, z")
    if np.any((x == 0).astype(int) + (y == 0) + (z == 0) >= 2):
        raise DivergentIntegral("R_J diverges with two or more zero arguments")

    val = special.elliprj(x, y, z, p)
    return _out(val, scalar)


def _check_k2(k2):
    k2 = np.asarray(k2, dtype=float)
    if np.any(~(k2 >= 0)) or np.any(k2 >= 1):
        raise ModulusOutOfRange("need 0 <= k2 < 1")
    return k2


def complete_K(k2):
    """Complete elliptic integral of the first kind K(k), given k2 = k**2."""
    scalar = np.ndim(k2) == 0
    k2 = _check_k2(k2)
    return _out(carlson_rf(0.0, 1.0 - k2, 1.0), scalar)


def complete_E(k2):
    """Complete elliptic integral of the second kind E(k), given k2 = k**2.

    k2 = 1 is rejected; its value is :data:`E_AT_UNIT_MODULUS`.
    """
    scalar = np.ndim(k2) == 0
    k2 = _check_k2(k2)
    y = 1.0 - k2
    val = carlson_rf(0.0, y, 1.0) - k2 / 3.0 * carlson_rj(0.0, y, 1.0, 1.0)
    return _out(val, scalar)


def complete_Pi(alpha2, k2):
    """Complete elliptic integral of the third kind Pi(alpha2, k).

    Only the circular case alpha2 < 1 is supported.
    """
    scalar = np.ndim(alpha2) == 0 and np.ndim(k2) == 0
    k2 = _check_k2(k2)
    alpha2 = np.asarray(alpha2, dtype=float)
    if np.any(~(alpha2 < 1)):
        raise UnsupportedCase("Pi(alpha2, k) needs alpha2 < 1")
    y = 1.0 - k2
    val = carlson_rf(0.0, y, 1.0) + alpha2 / 3.0 * carlson_rj(0.0, y, 1.0, 1.0 - alpha2)
    return _out(val, scalar)


@dataclass(frozen=True)
class ReducedIntegral:
    """coeff_K * K(k) + coeff_Pi * Pi(alpha2, k), the Legendre form of a quartic integral."""

    j: int
    g: float
    k2: float
    coeff_K: float
    coeff_Pi: float = 0.0
    alpha2: Optional[float] = None

    def value(self) -> float:
        out = self.coeff_K * complete_K(self.k2)
        if self.alpha2 is not None:
            out += self.coeff_Pi * complete_Pi(self.alpha2, self.k2)
        return out


def _quartic_constants(a, b, c, d):
    if not (a > b > c > d):
        raise BadOrdering(f"need a > b > c > d, got {(a, b, c, d)}")
    k2 = (b - c) * (a - d) / ((a - c) * (b - d))
    alpha2 = (b - c) / (b - d)
    g = 2.0 / np.sqrt((a - c) * (b - d))
    return float(g), float(k2), float(alpha2)


def legendre_reduce(a, b, c, d, j) -> ReducedIntegral:
    r"""Reduce :math:`\int_c^b s^j\,ds/\sqrt{(s-a)(s-b)(s-c)(s-d)}` to Legendre form.

    Requires ``a > b > c > d``. On ``(c, b)`` the quartic is positive, so the
    integral is real; it is positive for ``j = 0``.

    >>> r = legendre_reduce(4, 3, 2, 1, 0)
    >>> round(r.k2, 12)
    0.75
    """
    if j not in (-1, 0, 1):
        raise ValueError("j must be -1, 0 or 1")
    g, k2, alpha2 = _quartic_constants(a, b, c, d)
    if j == 0:
        return ReducedIntegral(j, g, k2, coeff_K=g)
    if j == 1:
        return ReducedIntegral(j, g, k2, coeff_K=d * g, coeff_Pi=g * (c - d), alpha2=alpha2)
    if c <= 0 <= b:
        raise PoleOnInterval("s = 0 lies on the integration interval")
    if d == 0 or c == 0:
        raise PoleOnInterval("j = -1 with a root at s = 0 has unbounded Legendre coefficients")
    return ReducedIntegral(
        j, g, k2, coeff_K=g / d, coeff_Pi=g * (1.0 / c - 1.0 / d), alpha2=alpha2 * d / c
    )


def quartic_integral(a, b, c, d, j):
    """Evaluate the reduced quartic integral directly, vectorized.

    Unlike :func:`legendre_reduce` this accepts ``d == 0`` for ``j = -1``:
    the two terms that blow up like ``1/d`` are regrouped through
    ``Pi(n, k) - K(k) = (n/3) R_J(0, 1-k^2, 1, 1-n)``, which stays finite.
    """
    (a, b, c, d), scalar = _as_arrays(a, b, c, d)
    if np.any(~((a > b) & (b > c) & (c > d))):
        raise BadOrdering("need a > b > c > d")
    if j not in (-1, 0, 1):
        raise ValueError("j must be -1, 0 or 1")
    k2 = (b - c) * (a - d) / ((a - c) * (b - d))
    alpha2 = (b - c) / (b - d)
    g = 2.0 / np.sqrt((a - c) * (b - d))
    if j == 0:
        return _out(g * complete_K(k2), scalar)
    if j == 1:
        return _out(d * g * complete_K(k2) + g * (c - d) * complete_Pi(alpha2, k2), scalar)
    if np.any((c <= 0) & (b >= 0)):
        raise PoleOnInterval("s = 0 lies on the integration interval")
    n = alpha2 * d / c
    val = g / c * complete_Pi(n, k2) - g * alpha2 / (3.0 * c) * carlson_rj(
        0.0, 1.0 - k2, 1.0, 1.0 - n
    )
    return _out(val, scalar)
