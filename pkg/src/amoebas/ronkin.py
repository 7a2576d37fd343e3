r"""Ronkin function of 1 + z + w + t: values, gradients, Hessians.

Two independent routes are kept side by side:

* quadrature oracles built only from Jensen's formula and the angle
  average over the fiber of (w, t) (``*_quadrature``, ``method="angle"``);
* closed forms from the radial integral over the chamber limits and its
  reduction to complete elliptic integrals (``*_closed``, ``method="table"``).

Throughout, ``ex, ey, eu`` denote the moduli e^x, e^y, e^u and the quartic
roots are ``A = (1+e^x)^2, B = (e^y+e^u)^2, C = (1-e^x)^2, D = (e^y-e^u)^2``.
The fiber radius r = |w + t| sweeps s = r^2 over (D, B); the angle subtended
at the origin is nontrivial for s in (C, A).
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .amoeba import (
    CONTOUR_CODE,
    ChamberLabel,
    LogPoint,
    Region,
    chamber_r_limits,
    classify_batch,
    membership,
    translate_coeffs,
)
from .elliptic import carlson_rj, complete_K, complete_Pi
from .errors import BadCoefficients, NotInChamber, OutOfRange, ToleranceNotMet
from .hyperseries import bloch_wigner, dilog, l_chi3, trilog

__all__ = [
    "GradResult",
    "NormalFormParams",
    "closed_form_report",
    "dilog_integral_identity",
    "elliptic_identity_terms",
    "grad_2var",
    "grad_ronkin",
    "one_sided_grad_limits",
    "hessian_2var",
    "hessian_closed",
    "hessian_closed_batch",
    "hessian_quadrature",
    "mahler_1zawat",
    "mahler_1zw",
    "mixed_pair",
    "normal_form_params",
    "ronkin_1var",
    "ronkin_1var_quadrature",
    "ronkin_2var_closed",
    "ronkin_2var_quadrature",
    "ronkin_3var",
    "ronkin_3var_quadrature",
]

PI = math.pi
PI2 = PI * PI
HALF_PI = PI / 2

# Below this distance (relative to max modulus) from e^x = 1 or e^y = e^u the
# mixed derivative is evaluated in the regrouped form that has no 1/d poles.
SINGULAR_TOL = 1e-7


def _quad(f, a, b, points=None, epsabs=1e-13, epsrel=1e-13, tol=None, limit=200):
    pts = None
    if points:
        pts = sorted(p for p in points if a < p < b) or None
    with warnings.catch_warnings():
        # the error estimate is checked below when a tolerance is requested
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(f, a, b, points=pts, epsabs=epsabs, epsrel=epsrel, limit=limit)
    if tol is not None and err > tol:
        raise ToleranceNotMet(f"quadrature error estimate {err:.3g} exceeds {tol:.3g}")
    return val


def _moduli(p):
    return math.exp(p[0]), math.exp(p[1]), math.exp(p[2])


def _roots(ex, ey, eu):
    return (1 + ex) ** 2, (ey + eu) ** 2, (1 - ex) ** 2, (ey - eu) ** 2


def _arccos(c):
    return math.acos(min(1.0, max(-1.0, c)))


def _theta_at(s, lo, hi):
    """theta with lo + (hi - lo) sin^2(theta) = s."""
    return math.asin(math.sqrt((s - lo) / (hi - lo)))


# --- one and two variables --------------------------------------------------


def ronkin_1var(roots, leading, x) -> float:
    """N_f(x) for f = leading * prod(z - b_k), by Jensen's formula."""
    if leading == 0:
        raise BadCoefficients("leading coefficient must be nonzero")
    total = math.log(abs(leading))
    for b in roots:
        mb = abs(b)
        total += x if mb == 0 else max(math.log(mb), x)
    return total


def ronkin_1var_quadrature(roots, leading, x) -> float:
    """Mean of log|f| over the circle |z| = e^x."""
    if leading == 0:
        raise BadCoefficients("leading coefficient must be nonzero")
    r = math.exp(x)
    roots = [complex(b) for b in roots]

    def f(phi):
        z = r * complex(math.cos(phi), math.sin(phi))
        return math.log(abs(leading)) + sum(math.log(abs(z - b)) for b in roots)

    pts = [math.atan2(b.imag, b.real) % (2 * PI) for b in roots if b != 0]
    return _quad(f, 0.0, 2 * PI, points=pts) / (2 * PI)


def _triangle_angles(x, y):
    X, Y = math.exp(x), math.exp(y)
    alpha = _arccos((1 + Y * Y - X * X) / (2 * Y))
    beta = _arccos((1 + X * X - Y * Y) / (2 * X))
    return alpha, beta


def _in_2var_amoeba(x, y):
    v = sorted([1.0, math.exp(x), math.exp(y)])
    return v[2] < v[0] + v[1]


def ronkin_2var_closed(x, y) -> float:
    """N_f for f = 1 + z + w: closed dilogarithm formula inside the amoeba."""
    if not _in_2var_amoeba(x, y):
        return max(0.0, x, y)
    alpha, beta = _triangle_angles(x, y)
    D = bloch_wigner(math.exp(x) * complex(math.cos(beta), math.sin(beta)))
    return (alpha * x + beta * y + D) / PI


def ronkin_2var_quadrature(x, y) -> float:
    """N_f for f = 1 + z + w as (1/pi) * int_0^pi max(log|1 + e^{y+i phi}|, x) d phi."""
    Y, X = math.exp(y), math.exp(x)

    def f(phi):
        return max(0.5 * math.log(abs(1 + 2 * Y * math.cos(phi) + Y * Y)), x)

    pts = [PI]
    c = (X * X - 1 - Y * Y) / (2 * Y)
    if -1 < c < 1:
        pts.append(math.acos(c))
    return _quad(f, 0.0, PI, points=pts[1:] or None, limit=400) / PI


def grad_2var(x, y) -> np.ndarray:
    """(alpha, beta) / pi inside the amoeba of 1 + z + w; the lattice point outside."""
    if not _in_2var_amoeba(x, y):
        vals = [0.0, x, y]
        e = [np.zeros(2), np.array([1.0, 0.0]), np.array([0.0, 1.0])]
        return e[int(np.argmax(vals))]
    return np.array(_triangle_angles(x, y)) / PI


def hessian_2var(x, y) -> np.ndarray:
    """Analytic Hessian of N for 1 + z + w, from derivatives of the triangle angles."""
    if not _in_2var_amoeba(x, y):
        return np.zeros((2, 2))
    X, Y = math.exp(x), math.exp(y)
    alpha, beta = _triangle_angles(x, y)
    sa, sb = math.sin(alpha), math.sin(beta)
    a_x = X * X / (Y * sa)
    b_y = Y * Y / (X * sb)
    a_y = -(X * X + Y * Y - 1) / (2 * Y * sa)
    b_x = -(X * X + Y * Y - 1) / (2 * X * sb)
    return np.array([[a_x, a_y], [b_x, b_y]]) / PI


# --- the Ronkin function in three variables ----------------------------------


def _partial_jensen(r, x):
    """(1/2pi) int_0^{2pi} max(log|1 + r e^{i phi}|, x) d phi in closed form.

    The part of the circle where |1 + r e^{i phi}| > e^x is |phi| < phi*;
    there int_0^{phi*} log|1 + r e^{i phi}| = -Im Li2(-r e^{i phi*}).
    """
    X = math.exp(x)
    c = (X * X - 1 - r * r) / (2 * r)
    if c <= -1:
        return math.log(max(1.0, r))
    if c >= 1:
        return x
    phs = math.acos(c)
    w = -r * complex(math.cos(phs), math.sin(phs))
    li2 = special.spence(1 - w)
    return (-li2.imag + (PI - phs) * x) / PI


def _outside_value(p, label):
    return [0.0, p[0], p[1], p[2]][label.component]


def ronkin_3var_quadrature(p, tol: float = 1e-7) -> float:
    """N_f(x, y, u) for f = 1 + z + w + t.

    The z-circle is averaged by Jensen's formula, leaving the mean of
    max(log|1 + w + t|, x); the angle between w and t reduces that to one
    integral over the fiber radius, in which the remaining circle average
    is done in closed form by :func:`_partial_jensen`.
    """
    label = membership(p)
    if label.region is Region.OUTSIDE:
        return _outside_value(p, label)
    x = p[0]
    ex, ey, eu = _moduli(p)
    A, B, C, D = _roots(ex, ey, eu)
    span = B - D

    def f(theta):
        s = D + span * math.sin(theta) ** 2
        return _partial_jensen(math.sqrt(s), x)

    pts = [_theta_at(v, D, B) for v in (A, C) if D < v < B]
    val = _quad(f, 0.0, HALF_PI, points=pts, tol=tol)
    return 2.0 / PI * val


def ronkin_3var(p, coeffs=None, tol: float = 1e-7) -> float:
    """N_f at p for f = 1 + a1 z + a2 w + a3 t (all ones by default)."""
    if coeffs is not None:
        p = translate_coeffs(p, coeffs)
    return ronkin_3var_quadrature(p, tol=tol)


# --- gradient ----------------------------------------------------------------


def _end_breaks(scales0, scales1, span):
    """Geometric theta breakpoints toward either end of s = c0 + span sin^2(theta).

    Near-degenerate roots put sqrt kinks at theta ~ sqrt(scale/span), far
    below what quad resolves on its own; ``scales0``/``scales1`` are the
    small distances in s seen from the lower/upper end.
    """
    out = []
    for scales, flip in ((scales0, False), (scales1, True)):
        pos = [v for v in scales if v > 0]
        if not pos or span <= 0:
            continue
        t = math.sqrt(min(pos) / span)
        if t >= 1e-3:
            continue
        th = np.geomspace(0.1 * t, 1e-1, max(2, int(math.log10(1e-1 / (0.1 * t))) + 1))
        out += [HALF_PI - v for v in th] if flip else list(th)
    return out


def _dx_table(ex, ey, eu, tol=1e-9):
    """dN/dx from the chamber-limit radial integral, including the full-circle strip.

    Between r0 and r1 the integrand is arccos((1+r^2-e^{2x})/2r) times the
    derivative of the fiber angle; substituting s = r^2 and then
    s = c0 + (c1 - c0) sin^2(theta) removes both endpoint singularities.
    For e^x > 1 + |e^y - e^u| the radii r < e^x - 1 see the whole circle
    inside the disc, adding (pi - psi(e^x - 1)) / pi.
    """
    A, B, C, D = _roots(ex, ey, eu)
    c0, c1 = max(C, D), min(A, B)
    if c0 >= c1:
        return 1.0 if ex > max(1.0, ey, eu) else 0.0
    span = c1 - c0
    X2 = ex * ex

    def f(theta):
        st, ct = math.sin(theta), math.cos(theta)
        s = c0 + span * st * st
        phi = _arccos((1 + s - X2) / (2 * math.sqrt(s)))
        weight = 2 * span * st * ct / math.sqrt((B - c1 + span * ct * ct) * (c0 - D + span * st * st))
        return phi * weight

    val = _quad(f, 0.0, HALF_PI, points=_end_breaks((c0 - min(C, D), c0, abs(X2 - 1 - c0)), (max(A, B) - c1,), span), tol=tol) / PI2
    if ex > 1 and C >= D:
        psi = _arccos(((ex - 1) ** 2 - ey * ey - eu * eu) / (2 * ey * eu))
        val += (PI - psi) / PI
    return val


def _dx_angle(ex, ey, eu, tol=1e-9):
    """dN/dx as (1/pi^2) * int_0^pi alpha(gamma) d gamma over the fiber angle."""
    A, B, C, D = _roots(ex, ey, eu)
    X2 = ex * ex
    span = B - D

    def f(theta):
        s = D + span * math.sin(theta) ** 2
        return _arccos((1 + s - X2) / (2 * math.sqrt(s)))

    pts = [_theta_at(v, D, B) for v in (A, C) if D < v < B] + _end_breaks((abs(C - D), D, abs(X2 - 1 - D)), (abs(B - A),), span)
    return 2.0 / PI2 * _quad(f, 0.0, HALF_PI, points=pts, tol=tol)


@dataclass(frozen=True)
class GradResult:
    grad: np.ndarray
    label: ChamberLabel
    method: str


_LATTICE = (
    np.zeros(3),
    np.array([1.0, 0.0, 0.0]),
    np.array([0.0, 1.0, 0.0]),
    np.array([0.0, 0.0, 1.0]),
)


def grad_ronkin(p, method: str = "table") -> GradResult:
    """Gradient of N_f; ``method`` is ``"table"`` (chamber limits) or ``"angle"``."""
    label = membership(p)
    if label.region is Region.OUTSIDE:
        return GradResult(_LATTICE[label.component].copy(), label, "exact")
    dx = {"table": _dx_table, "angle": _dx_angle}[method]
    ex, ey, eu = _moduli(p)
    g = np.array([dx(ex, ey, eu), dx(ey, ex, eu), dx(eu, ey, ex)])
    return GradResult(g, label, method)


def one_sided_grad_limits(p, axis, eps=1e-6, method="table"):
    """Gradient limits at a contour point p from the two sides along coordinate ``axis``.

    Each side is extrapolated as 2 g(eps) - g(2 eps), which removes the
    O(eps log eps) drift caused by the logarithmic growth of the Hessian.
    """
    def side(sign):
        vals = []
        for h in (eps, 2 * eps):
            q = np.array(p, dtype=float)
            q[axis] += sign * h
            vals.append(grad_ronkin(q, method).grad)
        return 2 * vals[0] - vals[1]

    return side(+1.0), side(-1.0)


def grad_x_from_limits(p, label=None) -> float:
    """dN/dx evaluated literally as -(1/pi^2) int_{r0}^{r1} phi psi' dr, chamber table limits.

    Kept for comparison: it omits the full-circle strip, so it is short by
    (pi - psi(r0)) / pi in chambers (+,-,-) and (-,-,-).
    """
    r0, r1 = chamber_r_limits(p, label)
    ex, ey, eu = _moduli(p)
    _, B, _, D = _roots(ex, ey, eu)
    lo, hi = r0 * r0, r1 * r1
    span = hi - lo
    X2 = ex * ex

    def f(theta):
        st, ct = math.sin(theta), math.cos(theta)
        s = lo + span * st * st
        phi = _arccos((1 + s - X2) / (2 * math.sqrt(s)))
        return phi * 2 * span * st * ct / math.sqrt(max((B - s) * (s - D), 1e-300))

    return _quad(f, 0.0, HALF_PI) / PI2


# --- second derivatives: quadrature route ------------------------------------


def _second_quadrature(ex, ey, eu, tol=1e-11):
    """(d2N/dx2, d2N/dxdy) from the quartic integrals over (max(C,D), min(A,B))."""
    A, B, C, D = _roots(ex, ey, eu)
    P1 = ex * ex + ey * ey - 1 - eu * eu
    P2 = (1 + ex) * (1 - ex) * (ey + eu) * (eu - ey)
    c0, c1 = max(C, D), min(A, B)
    a, d = max(A, B), min(C, D)
    span = c1 - c0

    def parts(theta):
        st2 = math.sin(theta) ** 2
        s = c0 + span * st2
        w = 2.0 / math.sqrt((a - c1 + span * (1 - st2)) * (c0 - d + span * st2))
        return s, w

    def fxx(theta):
        return parts(theta)[1]

    def fxy(theta):
        s, w = parts(theta)
        return (s + P1 + P2 / s) * w

    hxx = 2 * ex * ex / PI2 * _quad(fxx, 0.0, HALF_PI, tol=tol)
    hxy = -1.0 / (2 * PI2) * _quad(fxy, 0.0, HALF_PI, tol=tol)
    return hxx, hxy


def _require_chamber(p):
    label = membership(p)
    if not label.is_chamber:
        raise NotInChamber(f"{tuple(p)} is not in a chamber ({label})")
    return label


def _assemble(f, ex, ey, eu):
    """Symmetric Hessian from a (d2/dx2, d2/dxdy) routine and the cyclic symmetry of N."""
    h1 = f(ex, ey, eu)
    h2 = f(ey, eu, ex)
    h3 = f(eu, ex, ey)
    H = np.empty(np.shape(h1[0]) + (3, 3))
    H[..., 0, 0], H[..., 0, 1] = h1
    H[..., 1, 1], H[..., 1, 2] = h2
    H[..., 2, 2], H[..., 2, 0] = h3
    H[..., 1, 0] = H[..., 0, 1]
    H[..., 2, 1] = H[..., 1, 2]
    H[..., 0, 2] = H[..., 2, 0]
    return H


def hessian_quadrature(p) -> np.ndarray:
    """Hessian of N_f at a chamber point by direct quadrature of the quartic integrals."""
    _require_chamber(p)
    return _assemble(_second_quadrature, *_moduli(p))


# --- second derivatives: closed form ----------------------------------------


@dataclass(frozen=True)
class NormalFormParams:
    g: float
    k2: float
    alpha1_2: float
    alpha2_2: float
    Q1: float
    Q2: float
    Q3: float
    chamber: tuple
    # True on e^x = 1 or e^y = e^u, where Q1, Q3 are replaced by their finite limit
    limit_form: bool = False


def _blocks(ex, ey, eu):
    """Chamber-block coefficients g, k2, alpha1^2, alpha2^2, Q1, Q2, Q3 (vectorized).

    Blocks: I = (+,+,+),(+,-,-); II = (-,+,+),(-,-,-); III = (-,-,+),(-,+,-);
    IV = (+,-,+),(+,+,-). Q1 and Q3 are singular where e^x = 1 (III, IV) or
    e^y = e^u (I, II); those loci are handled by the caller.
    """
    s1 = (1 + ex - ey - eu) > 0
    s23_equal = ((1 + ey - ex - eu) > 0) == ((1 + eu - ex - ey) > 0)
    block_I = s1 & s23_equal
    block_II = ~s1 & s23_equal
    block_III = ~s1 & ~s23_equal

    E = ex * ey * eu
    xi = (1 + ex + ey - eu) * (1 + ex - ey + eu) * (1 - ex + ey + eu) * (-1 + ex + ey + eu)
    q2 = (1 - ex + ey - eu) * (1 - ex - ey + eu)
    q3 = (eu + ey) * (1 - ex + ey - eu) * (1 + ex) * (1 - ex - ey + eu)

    small_k = s23_equal == s1  # blocks I and III use k^2 = xi / 16e^{x+y+u}
    g = np.where(small_k, 0.5 / np.sqrt(E), 2.0 / np.sqrt(np.abs(xi)))
    k2 = np.where(small_k, xi / (16 * E), 16 * E / np.where(xi == 0, np.nan, xi))

    with np.errstate(divide="ignore", invalid="ignore"):
        q1_yu = 2 * ey * (ex**2 + ey**2 + eu**2 - 1 - 2 * ey * eu) / (ey - eu)
        q1_x = 2 * ex * (ex**2 + ey**2 - eu**2 + 1 - 2 * ex) / (ex - 1)
        Q1 = np.where(s23_equal, q1_yu, q1_x)
        Q2 = np.where(s23_equal, q2, -q2)
        Q3 = np.where(s23_equal, 1.0, -1.0) * q3 / ((eu - ey) * (ex - 1))
        a1 = np.select(
            [block_I, block_II, block_III],
            [
                (1 - ex + ey + eu) * (-1 + ex + ey + eu) / (4 * ey * eu),
                4 * ex / ((1 + ex + ey - eu) * (1 + ex - ey + eu)),
                (1 + ex - ey + eu) * (1 + ex + ey - eu) / (4 * ex),
            ],
            4 * ey * eu / ((1 - ex + ey + eu) * (-1 + ex + ey + eu)),
        )
        a2 = np.where(
            s23_equal, a1 * (ey - eu) ** 2 / (1 - ex) ** 2, a1 * (1 - ex) ** 2 / (ey - eu) ** 2
        )
    return dict(g=g, k2=k2, a1=a1, a2=a2, Q1=Q1, Q2=Q2, Q3=Q3)


def _near_singular(ex, ey, eu):
    scale = max(1.0, ex, ey, eu)
    return min(abs(1 - ex), abs(ey - eu)) < SINGULAR_TOL * scale


def normal_form_params(p) -> NormalFormParams:
    """Elliptic normal-form coefficients of the second derivatives at a chamber point.

    On the loci e^x = 1 and e^y = e^u the chamber formulas for Q1 and Q3 are
    0/0-type; there the limit is returned: Q3 = 0, alpha2^2 = 0 and
    Q1 = e^{2x} + e^{2y} - 1 - e^{2u}.
    """
    label = _require_chamber(p)
    ex, ey, eu = _moduli(p)
    b = _blocks(*(np.float64(v) for v in (ex, ey, eu)))
    limit = _near_singular(ex, ey, eu)
    Q1, Q3, a2 = float(b["Q1"]), float(b["Q3"]), float(b["a2"])
    if limit:
        Q1, Q3, a2 = ex * ex + ey * ey - 1 - eu * eu, 0.0, 0.0
    return NormalFormParams(
        g=float(b["g"]),
        k2=float(b["k2"]),
        alpha1_2=float(b["a1"]),
        alpha2_2=a2,
        Q1=Q1,
        Q2=float(b["Q2"]),
        Q3=Q3,
        chamber=label.signs,
        limit_form=limit,
    )


def _second_closed(ex, ey, eu):
    """(d2N/dx2, d2N/dxdy) from K and Pi, vectorized over arrays of moduli.

    The chamber combination Q1 K + Q2 Pi(alpha1^2) + Q3 Pi(alpha2^2) has
    Q1, Q3 ~ 1/sqrt(d) near e^x = 1 or e^y = e^u and cancels badly there.
    It is evaluated in the equivalent form
    (d + P1) K + (c - d) Pi(alpha1^2) + P2 J with d = min(C, D), c = max(C, D),
    n = alpha1^2 d / c = alpha2^2 and
    J = Pi(n)/c - alpha1^2 R_J(0, 1-k^2, 1, 1-n) / (3c),
    which is finite at d = 0 and agrees with the chamber form elsewhere.
    """
    ex, ey, eu = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (ex, ey, eu)))
    b = _blocks(ex, ey, eu)
    g, k2, a1 = b["g"], b["k2"], b["a1"]
    K = complete_K(k2)
    hxx = 2 * g * ex * ex / PI2 * K

    C, D = (1 - ex) ** 2, (ey - eu) ** 2
    c, d = np.maximum(C, D), np.minimum(C, D)
    both = c == 0  # e^x = 1 and e^y = e^u at once: P2 = 0 and J drops out
    cs = np.where(both, 1.0, c)
    n = np.where(both, 0.0, a1 * d / cs)
    P1 = ex * ex + ey * ey - 1 - eu * eu
    P2 = (1 + ex) * (1 - ex) * (ey + eu) * (eu - ey)
    J = complete_Pi(n, k2) / cs - a1 / (3 * cs) * carlson_rj(0.0, 1 - k2, 1.0, 1 - n)
    bracket = (d + P1) * K + (c - d) * complete_Pi(a1, k2) + np.where(both, 0.0, P2 * J)
    hxy = -g / (2 * PI2) * bracket
    if hxx.ndim == 0:
        return float(hxx), float(hxy)
    return hxx, hxy


def hessian_closed(p) -> np.ndarray:
    """Hessian of N_f at a chamber point from complete elliptic integrals."""
    _require_chamber(p)
    return _assemble(_second_closed, *_moduli(p))


def hessian_closed_batch(points, codes=None) -> np.ndarray:
    """Closed-form Hessians for an array of points of shape (..., 3).

    Entries are 0 outside the amoeba and NaN on the contour; ``codes`` from
    :func:`classify_batch` may be passed to skip reclassification.
    """
    pts = np.asarray(points, dtype=float)
    if codes is None:
        codes = classify_batch(pts)
    H = np.zeros(pts.shape[:-1] + (3, 3))
    H[codes == CONTOUR_CODE] = np.nan
    live = codes > 0
    if np.any(live):
        q = pts[live]
        H[live] = _assemble(_second_closed, np.exp(q[:, 0]), np.exp(q[:, 1]), np.exp(q[:, 2]))
    return H


def mixed_pair(p, method: str = "closed"):
    """d2N/dxdy at p computed with x first and with y first; equal by symmetry of N."""
    _require_chamber(p)
    f = {"closed": _second_closed, "quadrature": _second_quadrature}[method]
    ex, ey, eu = _moduli(p)
    return f(ex, ey, eu)[1], f(ey, ex, eu)[1]


# --- identities ---------------------------------------------------------------


def elliptic_identity_terms(a, b, c):
    """The five K/Pi terms whose sum vanishes for moduli (a, b, c) in chamber (+,+,+).

    This is the equality of the two mixed derivatives d2N/dxdy computed with
    x first and with y first, written out with the block-I coefficients.
    """
    if not (1 + a > b + c and 1 + b > a + c and 1 + c > a + b and min(a, b, c) > 0):
        raise NotInChamber("(a, b, c) must satisfy the three (+,+,+) inequalities")
    if not a + b + c > 1:
        raise NotInChamber("(a, b, c) lies outside the amoeba (a + b + c <= 1)")
    if a == c or b == c or a == 1 or b == 1:
        raise NotInChamber("degenerate parameters (a = c, b = c, a = 1 or b = 1)")
    k2 = (1 + a + b - c) * (1 + a - b + c) * (1 - a + b + c) * (-1 + a + b + c) / (16 * a * b * c)
    al1 = (1 - a + b + c) * (-1 + a + b + c) / (4 * b * c)
    al2 = (1 + a - b + c) * (-1 + a + b + c) / (4 * a * c)
    al3 = al1 * (b - c) ** 2 / (1 - a) ** 2
    al4 = al2 * (a - c) ** 2 / (1 - b) ** 2
    return [
        2 * (1 + a + b - c) * (a - b) * c / ((a - c) * (c - b)) * complete_K(k2),
        (1 - a + b - c) * complete_Pi(al1, k2),
        -(1 + a - b - c) * complete_Pi(al2, k2),
        (1 + a) * (b + c) * (1 - a + b - c) / ((1 - a) * (b - c)) * complete_Pi(al3, k2),
        -(1 + b) * (a + c) * (1 + a - b - c) / ((1 - b) * (a - c)) * complete_Pi(al4, k2),
    ]


def dilog_integral_identity(x):
    """Both sides of Li2(-e^x) - Li2(e^x) = int_{1-e^x}^{1+e^x} phi(r) psi'(r) dr, e^x < 1."""
    ex = math.exp(x)
    if ex >= 1:
        raise OutOfRange("identity holds for e^x < 1")
    lhs = dilog(-ex) - dilog(ex)
    lo, hi = (1 - ex) ** 2, (1 + ex) ** 2
    span = hi - lo

    def f(theta):
        s = lo + span * math.sin(theta) ** 2
        return _arccos((1 + s - ex * ex) / (2 * math.sqrt(s)))

    # psi'(r) dr = -ds / sqrt((hi - s)(s - lo)) = -2 d theta
    rhs = -2.0 * _quad(f, 0.0, HALF_PI, epsabs=1e-15)
    return lhs, rhs


def closed_form_report(points_by_chamber):
    """Largest relative closed-vs-quadrature error of (d2/dx2, d2/dxdy) per chamber."""
    report = {}
    for signs, pts in points_by_chamber.items():
        exx = exy = 0.0
        for p in pts:
            m = _moduli(p)
            cxx, cxy = _second_closed(*m)
            qxx, qxy = _second_quadrature(*m)
            exx = max(exx, abs(cxx - qxx) / abs(qxx))
            exy = max(exy, abs(cxy - qxy) / max(abs(qxy), 1e-300))
        report[signs] = (exx, exy)
    return report


def mahler_1zw() -> float:
    """m(1 + z + w) = (3 sqrt(3) / 4 pi) L(chi_{-3}, 2)."""
    return 3 * math.sqrt(3) / (4 * PI) * l_chi3(2.0)


def mahler_1zawat(a) -> float:
    """m(1 + z + a w + a t) for a > 0 from trilogarithms; equals N_f(0, log a, log a)."""
    if not a > 0:
        raise OutOfRange("a must be positive")
    if a <= 1:
        return 2 / PI2 * (trilog(a) - trilog(-a))
    return math.log(a) + 2 / PI2 * (trilog(1 / a) - trilog(-1 / a))
