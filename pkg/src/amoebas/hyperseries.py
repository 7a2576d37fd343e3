"""Hypergeometric and polylogarithmic series.

Series results carry a rigorous bound on the discarded tail. The bounds
come from majorizing the term ratios by a geometric sequence once the
summation index is past every parameter, where each ratio factor
``(p + n) / (q + n)`` is monotone in ``n``.
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy import special

from .errors import BadParameter, OutOfConvergenceRegion, ToleranceNotMet, UndefinedAt

__all__ = [
    "GkzSystem",
    "SeriesResult",
    "ZETA3",
    "appell_f1",
    "bloch_wigner",
    "dilog",
    "gauss_2f1",
    "gkz_phi",
    "gkz_phi_tilde",
    "l_chi3",
    "phi_series",
    "phi_tilde_term",
    "polylog2",
    "trilog",
]

ZETA3 = 1.2020569031595942853997381615114

_MAX_TERMS_1D = 2_000_000
_MAX_BOX_2D = 4096


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    truncation_bound: float

    def __float__(self):
        return float(self.value)


def _is_nonpositive_int(v) -> bool:
    return v <= 0 and float(v).is_integer()


def _ratio_cap(p, q, n):
    """Upper bound of |(p + t) / (q + t)| over t >= n, valid once q + n > 0 and p + n > 0."""
    return max(1.0, abs((p + n) / (q + n)))


def gauss_2f1(a, b, c, z, rtol=1e-12) -> SeriesResult:
    """Gauss hypergeometric series 2F1(a, b; c; z) for real arguments."""
    if _is_nonpositive_int(c):
        raise BadParameter("c must not be a non-positive integer")
    terminating = _is_nonpositive_int(a) or _is_nonpositive_int(b)
    if not terminating and abs(z) >= 1:
        raise OutOfConvergenceRegion("2F1 series needs |z| < 1")

    total = 0.0
    term = 1.0
    n = 0
    floor = max(abs(a), abs(b), abs(c)) + 1
    while True:
        total += term
        nxt = term * (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        n += 1
        if nxt == 0.0:
            return SeriesResult(total, n, 0.0)
        if n >= floor:
            rho = abs(z) * _ratio_cap(a, c, n) * _ratio_cap(b, 1, n)
            if rho < 1:
                bound = abs(nxt) / (1 - rho)
                if bound <= rtol * abs(total):
                    return SeriesResult(total + nxt, n + 1, bound * rho)
        if n > _MAX_TERMS_1D:
            raise ToleranceNotMet("2F1 series did not converge")
        term = nxt


def _appell_box(a, b, b2, c, z, w, M, N):
    s = np.arange(M + N + 1, dtype=float)
    ratio_ac = np.concatenate(([1.0], np.cumprod((a + s[:-1]) / (c + s[:-1]))))
    m = np.arange(M + 1, dtype=float)
    n = np.arange(N + 1, dtype=float)
    bm = np.concatenate(([1.0], np.cumprod((b + m[:-1]) / (m[:-1] + 1) * z)))
    bn = np.concatenate(([1.0], np.cumprod((b2 + n[:-1]) / (n[:-1] + 1) * w)))
    idx = m[:, None].astype(int) + n[None, :].astype(int)
    return ratio_ac[idx] * bm[:, None] * bn[None, :]


def appell_f1(a, b, b2, c, z, w, rtol=1e-10) -> SeriesResult:
    r"""Appell's double series

    .. math::

        F_1(a; b, b'; c; z, w) = \sum_{m,n\ge 0}
            \frac{(a)_{m+n}(b)_m(b')_n}{(c)_{m+n}\,m!\,n!} z^m w^n .
    """
    if _is_nonpositive_int(c):
        raise BadParameter("c must not be a non-positive integer")
    if abs(z) >= 1 or abs(w) >= 1:
        raise OutOfConvergenceRegion("F1 series needs |z| < 1 and |w| < 1")

    floor = int(math.ceil(max(abs(a), abs(b), abs(b2), abs(c)))) + 2
    M = N = max(64, floor)
    while True:
        t = _appell_box(a, b, b2, c, z, w, M, N)
        inner = t[:M, :N]
        value = math.fsum(inner.ravel())
        rho_z = abs(z) * _ratio_cap(a, c, M) * _ratio_cap(b, 1, M)
        rho_w = abs(w) * _ratio_cap(a, c, N) * _ratio_cap(b2, 1, N)
        if rho_z < 1 and rho_w < 1:
            edge_m = np.abs(t[M, :N]).sum() + abs(t[M, N]) / (1 - rho_w)
            bound = edge_m / (1 - rho_z) + np.abs(t[:M, N]).sum() / (1 - rho_w)
            if bound <= rtol * abs(value):
                return SeriesResult(value, M * N, float(bound))
        M *= 2
        N *= 2
        if M > _MAX_BOX_2D:
            raise ToleranceNotMet("F1 series did not converge within the lattice box cap")


class GkzSystem(Enum):
    """The two A-hypergeometric systems whose series give K and Pi.

    ``PHI_K`` uses gamma = (-1/2, -1/2, 0) with B = (-1, -1, 1, 1)^T;
    ``PHI_TILDE_PI`` uses gamma = (-1, 0, -1/2, -1/2) with a 6x2 lattice matrix.
    """

    PHI_K = "PhiK"
    PHI_TILDE_PI = "PhiTildePi"

    @property
    def gamma(self) -> Tuple[float, ...]:
        if self is GkzSystem.PHI_K:
            return (-0.5, -0.5, 0.0)
        return (-1.0, 0.0, -0.5, -0.5)

    @property
    def B(self) -> np.ndarray:
        if self is GkzSystem.PHI_K:
            return np.array([[-1], [-1], [1], [1]])
        return np.array([[-1, 1, 0, -1, 1, 0], [0, 1, -1, -1, 0, 1]]).T


def _phi_coefficients(gamma, k):
    """1 / (Gamma(g1-k+1) Gamma(g2-k+1) Gamma(g3+k+1) k!) for B = (-1,-1,1,1)^T.

    Evaluated in log space; any pole in the denominator gives an exact 0.
    """
    g1, g2, g3 = gamma
    args = [g1 - k + 1, g2 - k + 1, g3 + k + 1, k + 1.0]
    logmag = np.zeros_like(k, dtype=float)
    sign = np.ones_like(k, dtype=float)
    pole = np.zeros_like(k, dtype=bool)
    for arg in args:
        pole |= (arg <= 0) & (arg == np.floor(arg))
        logmag -= special.gammaln(np.where(pole, 1.0, arg))
        sign *= special.gammasgn(np.where(pole, 1.0, arg))
    return np.where(pole, 0.0, sign * np.exp(logmag))


def phi_series(gamma, z, rtol=1e-15) -> SeriesResult:
    """Phi(1, 1, 1, z) for the B = (-1, -1, 1, 1)^T lattice and any parameter triple.

    The term ratio is ``z (k - g1)(k - g2) / ((k + g3 + 1)(k + 1))``.
    """
    if abs(z) >= 1:
        raise OutOfConvergenceRegion("Phi series needs |z| < 1")
    g1, g2, g3 = gamma
    floor = int(math.ceil(max(abs(g1), abs(g2), abs(g3)))) + 2
    K = max(64, floor)
    while True:
        k = np.arange(K + 1, dtype=float)
        terms = _phi_coefficients(gamma, k) * np.power(z, k)
        value = math.fsum(terms[:K])
        rho = abs(z) * _ratio_cap(-g1, 1, K) * _ratio_cap(-g2, g3 + 1, K)
        if rho < 1:
            bound = abs(terms[K]) / (1 - rho)
            if bound <= rtol * abs(value) or bound == 0:
                return SeriesResult(value, K, float(bound))
        K *= 2
        if K > _MAX_TERMS_1D:
            raise ToleranceNotMet("Phi series did not converge")


def gkz_phi(system: GkzSystem, z, rtol=1e-15) -> SeriesResult:
    """Phi(1, 1, 1, z) of the K-system; (pi^2 / 2) * Phi equals K(k) at k^2 = z."""
    if system is not GkzSystem.PHI_K:
        raise BadParameter("gkz_phi is defined for GkzSystem.PHI_K only")
    return phi_series(system.gamma, z, rtol)


def phi_tilde_term(m, n, alpha2, k2):
    """Lattice term of Phi~(1, 1, 1, 1, alpha2, k2) at k = (m, n), vectorized.

    With gamma = (-1, 0, -1/2, -1/2) the term is
    ``(-1)^m Gamma(1+m) alpha2^m k2^n /
    (Gamma(m+n+1) Gamma(1/2-n) Gamma(1/2-m-n) Gamma(m+1) Gamma(n+1))``.
    Lattice points where a denominator Gamma sits on a pole contribute 0,
    which removes every point outside the nonnegative quadrant.
    """
    m = np.asarray(m, dtype=float)
    n = np.asarray(n, dtype=float)
    den_args = [m + n + 1, 0.5 - n, 0.5 - m - n, m + 1, n + 1]
    pole = np.zeros(np.broadcast(m, n).shape, dtype=bool)
    for arg in den_args:
        pole |= (arg <= 0) & (arg == np.floor(arg))
    safe = lambda v: np.where(pole, 1.0, v)  # noqa: E731
    logmag = special.gammaln(safe(1 + m))
    sign = special.gammasgn(safe(1 + m)) * np.where(np.mod(m, 2) == 0, 1.0, -1.0)
    for arg in den_args:
        logmag = logmag - special.gammaln(safe(arg))
        sign = sign * special.gammasgn(safe(arg))
    mono = np.power(alpha2, np.where(pole, 0, m)) * np.power(k2, np.where(pole, 0, n))
    return np.where(pole, 0.0, sign * np.exp(logmag) * mono)


def gkz_phi_tilde(system: GkzSystem, alpha2, k2, rtol=1e-15) -> SeriesResult:
    """Phi~(1, 1, 1, 1, alpha2, k2); (pi^2 / 2) * Phi~ equals Pi(alpha2, k)."""
    if system is not GkzSystem.PHI_TILDE_PI:
        raise BadParameter("gkz_phi_tilde is defined for GkzSystem.PHI_TILDE_PI only")
    if abs(alpha2) >= 1 or abs(k2) >= 1:
        raise OutOfConvergenceRegion("Phi~ series needs |alpha2| < 1 and |k2| < 1")
    # |t(m+1,n)/t(m,n)| = |alpha2| (m+n+1/2)/(m+n+1) and
    # |t(m,n+1)/t(m,n)| = |k2| (n+1/2)(m+n+1/2)/((n+1)(m+n+1)), so |t(m,n)| <= t00 |alpha2|^m |k2|^n.
    ra, rk = abs(alpha2), abs(k2)
    t00 = 1.0 / math.pi
    M = N = 64
    while True:
        mm, nn = np.meshgrid(np.arange(M), np.arange(N), indexing="ij")
        value = math.fsum(phi_tilde_term(mm, nn, alpha2, k2).ravel())
        bound = t00 * (ra**M / ((1 - ra) * (1 - rk)) + rk**N / ((1 - rk) * (1 - ra)))
        if bound <= rtol * abs(value):
            return SeriesResult(value, M * N, bound)
        M *= 2
        N *= 2
        if M > _MAX_BOX_2D:
            raise ToleranceNotMet("Phi~ series did not converge within the lattice box cap")


@lru_cache(maxsize=None)
def _bernoulli_even(count: int):
    """B_2, B_4, ..., B_{2*count} as floats (exact rational recursion)."""
    B = [Fraction(1)]
    for m in range(1, 2 * count + 1):
        B.append(-sum(math.comb(m + 1, k) * B[k] for k in range(m)) / Fraction(m + 1))
    return tuple(float(B[2 * k]) for k in range(1, count + 1))


_B2K = _bernoulli_even(30)
_INV_FACT = tuple(1.0 / math.factorial(2 * k + 1) for k in range(1, 31))


def _li2_bernoulli(z: complex) -> complex:
    """Li2 through its expansion in u = -log(1 - z); needs |u| < 2 pi."""
    u = -cmath.log(1 - z)
    u2 = u * u
    total = u - u2 / 4
    p = u
    for b, inv in zip(_B2K, _INV_FACT):
        p *= u2
        term = b * inv * p
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return total


def polylog2(z) -> complex:
    """Principal branch of the dilogarithm for complex z (branch cut [1, inf))."""
    z = complex(z)
    if z == 1:
        return complex(math.pi**2 / 6)
    if abs(z) > 1:
        return -polylog2(1 / z) - math.pi**2 / 6 - 0.5 * cmath.log(-z) ** 2
    if abs(z) < 0.25:
        total = 0j
        p = 1 + 0j
        for k in range(1, 200):
            p *= z
            term = p / (k * k)
            total += term
            if abs(term) < 1e-17 * abs(total):
                break
        return total
    if z.real <= 0.5:
        return _li2_bernoulli(z)
    w = 1 - z
    return -_li2_bernoulli(w) + math.pi**2 / 6 - cmath.log(z) * cmath.log(w)


def dilog(z: float) -> float:
    """Li2(z) for real z in [-1, 1]."""
    if abs(z) > 1:
        raise OutOfConvergenceRegion("dilog is restricted to |z| <= 1")
    return polylog2(float(z)).real


def _li3_near_one(x: float) -> float:
    # Li3(e^mu) = sum_{k != 2} zeta(3-k) mu^k / k! + (3/2 - log(-mu)) mu^2 / 2, |mu| < 2 pi
    mu = math.log(x)
    total = ZETA3 + math.pi**2 / 6 * mu
    if mu != 0:
        total += (1.5 - math.log(-mu)) * mu * mu / 2
    total += -0.5 * mu**3 / 6
    # k >= 4: zeta(3-k) = -B_{k-2}/(k-2), nonzero only for even k.
    p = mu * mu
    fact = 2.0
    for j, b in enumerate(_B2K):
        k = 2 * j + 4
        p *= mu * mu
        fact *= (k - 1) * k
        term = -b / (k - 2) * p / fact
        total += term
        if abs(term) < 1e-18:
            break
    return total


def trilog(z: float) -> float:
    """Li3(z) for real z in [-1, 1]."""
    if abs(z) > 1:
        raise OutOfConvergenceRegion("trilog is restricted to |z| <= 1")
    z = float(z)
    if z < 0:
        # Li3(z) + Li3(-z) = Li3(z^2) / 4
        return 0.25 * trilog(z * z) - trilog(-z)
    if z <= 0.5:
        total = 0.0
        p = 1.0
        for k in range(1, 200):
            p *= z
            term = p / k**3
            total += term
            if term < 1e-18:
                break
        return total
    return _li3_near_one(z)


def bloch_wigner(z) -> float:
    """Bloch-Wigner dilogarithm D(z) = Im(Li2(z)) + arg(1 - z) log|z|."""
    z = complex(z)
    if z == 0 or z == 1:
        raise UndefinedAt("D(z) is undefined at 0 and 1")
    if z.imag == 0:
        return 0.0
    if abs(z) > 1:
        return -bloch_wigner(1 / z)
    return polylog2(z).imag + cmath.phase(1 - z) * math.log(abs(z))


def l_chi3(s: float = 2.0) -> float:
    """Dirichlet L(chi_{-3}, s) = 3^{-s} (zeta(s, 1/3) - zeta(s, 2/3)) for s > 1."""
    if s <= 1:
        raise OutOfConvergenceRegion("L(chi_-3, s) is evaluated for s > 1 only")
    return float(3.0**-s * (special.zeta(s, 1.0 / 3.0) - special.zeta(s, 2.0 / 3.0)))
