"""Randomized invariant checks run by ``amoebas verify``.

Each suite returns a :class:`SuiteResult`; all randomness comes from the
generator passed in, so a fixed seed reproduces the output exactly.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .amoeba import CHAMBERS, sample_chamber_points, sample_contour_points
from .elliptic import complete_K, complete_Pi, quartic_integral
from .hyperseries import GkzSystem, gkz_phi, gkz_phi_tilde
from .ronkin import (
    closed_form_report,
    dilog_integral_identity,
    elliptic_identity_terms,
    mixed_pair,
    one_sided_grad_limits,
)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    worst: float
    tol: float
    cases: int


def quartic_quadrature(a, b, c, d, j):
    """int_c^b s^j ds / sqrt(|(s-a)(s-b)(s-c)(s-d)|) with s = c + (b - c) sin^2(theta)."""
    span = b - c

    def f(theta):
        st2 = math.sin(theta) ** 2
        s = c + span * st2
        return 2 * s**j / math.sqrt((a - b + span * (1 - st2)) * (c - d + span * st2))

    return integrate.quad(f, 0.0, math.pi / 2, epsabs=0, epsrel=1e-13, limit=200)[0]


def random_quadruple(rng):
    """a > b > c > d with 0 outside [d, b] half the time (so j = -1 stays defined)."""
    while True:
        v = np.sort(rng.uniform(0.05, 5.0, 4))[::-1]
        if rng.random() < 0.5:
            v = -v[::-1]
        a, b, c, d = (float(t) for t in v)
        if min(a - b, b - c, c - d) > 1e-3 and not (c <= 0 <= b):
            return a, b, c, d


def random_identity_triple(rng):
    while True:
        a, b, c = rng.uniform(0.2, 1.8, 3)
        ok = 1 + a > b + c and 1 + b > a + c and 1 + c > a + b and a + b + c > 1
        far = min(abs(a - c), abs(b - c), abs(a - 1), abs(b - 1)) > 1e-3
        if ok and far:
            return float(a), float(b), float(c)


def suite_elliptic_identity(rng, n=100, tol=1e-8):
    worst = 0.0
    for _ in range(n):
        terms = elliptic_identity_terms(*random_identity_triple(rng))
        worst = max(worst, abs(math.fsum(terms)) / max(abs(t) for t in terms))
    return SuiteResult("elliptic identity", worst <= tol, worst, tol, n)


def suite_phi_k(rng, n=50, tol=1e-9):
    worst = 0.0
    for k2 in rng.uniform(0.0, 0.95, n):
        K = complete_K(k2)
        worst = max(worst, abs(math.pi**2 / 2 * gkz_phi(GkzSystem.PHI_K, k2).value - K) / K)
    return SuiteResult("Phi vs K", worst <= tol, worst, tol, n)


def suite_phi_tilde_pi(rng, n=50, tol=1e-8):
    worst = 0.0
    for a2, k2 in rng.uniform(0.0, 0.9, (n, 2)):
        P = complete_Pi(a2, k2)
        val = gkz_phi_tilde(GkzSystem.PHI_TILDE_PI, a2, k2).value
        worst = max(worst, abs(math.pi**2 / 2 * val - P) / abs(P))
    return SuiteResult("Phi~ vs Pi", worst <= tol, worst, tol, n)


def suite_legendre(rng, n=200, tol=1e-8):
    worst = 0.0
    for _ in range(n):
        quad = random_quadruple(rng)
        for j in (-1, 0, 1):
            ref = quartic_quadrature(*quad, j)
            worst = max(worst, abs(quartic_integral(*quad, j) - ref) / abs(ref))
    return SuiteResult("Legendre round-trip", worst <= tol, worst, tol, 3 * n)


def suite_hessian_symmetry(rng, per_chamber=3, tol=1e-8):
    worst = 0.0
    for signs in CHAMBERS:
        for p in sample_chamber_points(signs, per_chamber, rng, margin=1e-2):
            a, b = mixed_pair(p)
            worst = max(worst, abs(a - b) / abs(b))
    return SuiteResult("Hessian symmetry", worst <= tol, worst, tol, 8 * per_chamber)


def suite_continuity(rng, per_surface=10, tol=1e-5):
    worst = 0.0
    for axis in range(3):
        for p in sample_contour_points(axis, per_surface, rng):
            left, right = one_sided_grad_limits(p, axis)
            worst = max(worst, float(np.abs(left - right).max()))
    return SuiteResult("contour continuity", worst <= tol, worst, tol, 3 * per_surface)


def suite_dilog(rng=None, tol=1e-8):
    worst = 0.0
    for ex in (0.1, 0.5, 0.9):
        lhs, rhs = dilog_integral_identity(math.log(ex))
        worst = max(worst, abs(lhs - rhs))
    return SuiteResult("dilog identity", worst <= tol, worst, tol, 3)


def chamber_discrepancies(rng, per_chamber=20):
    pts = {s: sample_chamber_points(s, per_chamber, rng) for s in CHAMBERS}
    return closed_form_report(pts)


def suite_closed_vs_quadrature(rng, per_chamber=20, tol_xx=1e-7, tol_xy=1e-6):
    report = chamber_discrepancies(rng, per_chamber)
    wxx = max(v[0] for v in report.values())
    wxy = max(v[1] for v in report.values())
    passed = wxx <= tol_xx and wxy <= tol_xy
    result = SuiteResult("closed vs quadrature Hessian", passed, max(wxx, wxy), tol_xy, 8 * per_chamber)
    return result, report


SUITES = (
    suite_elliptic_identity,
    suite_phi_k,
    suite_phi_tilde_pi,
    suite_legendre,
    suite_hessian_symmetry,
    suite_continuity,
    suite_dilog,
)


def run_all(seed: int):
    """Run every suite with generators spawned from ``seed``; returns (results, per-chamber report)."""
    children = np.random.SeedSequence(seed).spawn(len(SUITES) + 1)
    results = [suite(np.random.default_rng(s)) for suite, s in zip(SUITES, children)]
    closed, report = suite_closed_vs_quadrature(np.random.default_rng(children[-1]))
    results.append(closed)
    return results, report
