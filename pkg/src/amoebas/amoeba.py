"""Geometry of the amoeba of the hyperplane f = 1 + z + w + t.

Points are given in log coordinates (x, y, u) = (log|z|, log|w|, log|t|).
The amoeba is the set where the four moduli 1, e^x, e^y, e^u satisfy the
polygon inequality (the largest is at most the sum of the others). Its
contour consists of the seven equalities

    1 + e^x = e^y + e^u,  1 + e^y = e^x + e^u,  1 + e^u = e^x + e^y
    (interior: they cut the amoeba into eight chambers), and
    largest modulus = sum of the other three (four boundary pieces).
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .errors import BadCoefficients, NotInChamber

log = logging.getLogger(__name__)

__all__ = [
    "CHAMBERS",
    "ChamberLabel",
    "LogPoint",
    "QuarticParams",
    "R_LIMITS",
    "ROOT_ORDER",
    "Region",
    "chamber_r_limits",
    "classify_batch",
    "compactified_vertices",
    "compactify",
    "contour_residuals",
    "membership",
    "quartic_params",
    "sample_chamber_points",
    "sample_contour_points",
    "sign_triple",
    "translate_coeffs",
]

DEFAULT_TOL = 1e-9


class LogPoint(NamedTuple):
    x: float
    y: float
    u: float


class Region(Enum):
    CHAMBER = "chamber"
    ON_CONTOUR = "on_contour"
    OUTSIDE = "outside"


Signs = Tuple[str, str, str]

CHAMBERS: Tuple[Signs, ...] = (
    ("+", "+", "+"),
    ("-", "+", "+"),
    ("-", "-", "+"),
    ("+", "-", "+"),
    ("+", "-", "-"),
    ("+", "+", "-"),
    ("-", "+", "-"),
    ("-", "-", "-"),
)

# Integration limits (r0, r1) for the first partial derivative, keyed by chamber.
# Arguments are the moduli (e^x, e^y, e^u).
R_LIMITS = {
    ("+", "+", "+"): (lambda ex, ey, eu: 1 - ex, lambda ex, ey, eu: ey + eu),
    ("-", "+", "+"): (lambda ex, ey, eu: 1 - ex, lambda ex, ey, eu: 1 + ex),
    ("-", "-", "+"): (lambda ex, ey, eu: eu - ey, lambda ex, ey, eu: 1 + ex),
    ("+", "-", "+"): (lambda ex, ey, eu: eu - ey, lambda ex, ey, eu: ey + eu),
    ("+", "-", "-"): (lambda ex, ey, eu: ex - 1, lambda ex, ey, eu: ey + eu),
    ("+", "+", "-"): (lambda ex, ey, eu: ey - eu, lambda ex, ey, eu: ey + eu),
    ("-", "+", "-"): (lambda ex, ey, eu: ey - eu, lambda ex, ey, eu: 1 + ex),
    ("-", "-", "-"): (lambda ex, ey, eu: ex - 1, lambda ex, ey, eu: 1 + ex),
}

# Descending order of the quartic roots A, B, C, D inside each chamber.
ROOT_ORDER = {
    ("+", "+", "+"): "ABCD",
    ("+", "-", "-"): "ABCD",
    ("+", "-", "+"): "ABDC",
    ("+", "+", "-"): "ABDC",
    ("-", "+", "+"): "BACD",
    ("-", "-", "-"): "BACD",
    ("-", "-", "+"): "BADC",
    ("-", "+", "-"): "BADC",
}


@dataclass(frozen=True)
class ChamberLabel:
    region: Region
    signs: Optional[Signs] = None
    contour_distance: float = 0.0
    # index of the dominant monomial (0 = constant, 1 = z, 2 = w, 3 = t) when outside
    component: Optional[int] = None

    @property
    def is_chamber(self) -> bool:
        return self.region is Region.CHAMBER

    @property
    def inside(self) -> bool:
        return self.region is not Region.OUTSIDE

    def __str__(self):
        if self.region is Region.CHAMBER:
            return "(" + ",".join(self.signs) + ")"
        if self.region is Region.OUTSIDE:
            return f"outside[{self.component}]"
        return "contour"


def _scaled_moduli(p):
    """(1, e^x, e^y, e^u) divided by the largest of them, and log of that scale."""
    logs = np.array([0.0, p[0], p[1], p[2]], dtype=float)
    m = logs.max()
    return np.exp(logs - m), m


def contour_residuals(p) -> np.ndarray:
    """The seven contour equalities as LHS - RHS, relative to max(1, e^x, e^y, e^u).

    Order: the three interior ones (1+e^x-e^y-e^u, 1+e^y-e^x-e^u,
    1+e^u-e^x-e^y), then the four boundary ones (v_i - sum of the others for
    v = (1, e^x, e^y, e^u)).
    """
    v, _ = _scaled_moduli(p)
    one, ex, ey, eu = v
    interior = [one + ex - ey - eu, one + ey - ex - eu, one + eu - ex - ey]
    total = v.sum()
    boundary = [vi - (total - vi) for vi in v]
    return np.array(interior + boundary)


def membership(p, tol: float = DEFAULT_TOL) -> ChamberLabel:
    """Classify a point as outside the amoeba, on the contour, or in a chamber."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    res = contour_residuals(p)
    dist = float(np.min(np.abs(res)))
    boundary = res[3:]
    dom = int(np.argmax(boundary))
    if boundary[dom] > tol:
        return ChamberLabel(Region.OUTSIDE, contour_distance=dist, component=dom)
    if dist <= tol:
        return ChamberLabel(Region.ON_CONTOUR, contour_distance=dist)
    signs = tuple("+" if r > 0 else "-" for r in res[:3])
    return ChamberLabel(Region.CHAMBER, signs=signs, contour_distance=dist)


# Integer codes used by :func:`classify_batch`.
OUTSIDE_CODE = -1
CONTOUR_CODE = 0


def classify_batch(points, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Vectorized :func:`membership` for an array of shape (..., 3).

    Returns integer codes: -1 outside, 0 on the contour, and 1 + index into
    :data:`CHAMBERS` for chamber points.
    """
    pts = np.asarray(points, dtype=float)
    logs = np.concatenate([np.zeros(pts.shape[:-1] + (1,)), pts], axis=-1)
    v = np.exp(logs - logs.max(axis=-1, keepdims=True))
    one, ex, ey, eu = np.moveaxis(v, -1, 0)
    interior = np.stack([one + ex - ey - eu, one + ey - ex - eu, one + eu - ex - ey], axis=-1)
    boundary = 2 * v - v.sum(axis=-1, keepdims=True)
    dist = np.minimum(np.abs(interior).min(axis=-1), np.abs(boundary).min(axis=-1))
    bits = interior > 0
    lookup = np.zeros((2, 2, 2), dtype=int)
    for i, signs in enumerate(CHAMBERS):
        lookup[tuple(int(s == "+") for s in signs)] = i + 1
    codes = lookup[bits[..., 0].astype(int), bits[..., 1].astype(int), bits[..., 2].astype(int)]
    codes = np.where(dist <= tol, CONTOUR_CODE, codes)
    return np.where(boundary.max(axis=-1) > tol, OUTSIDE_CODE, codes)


def code_label(code: int) -> str:
    """Text form of a :func:`classify_batch` code, matching ``str(ChamberLabel)``."""
    if code == OUTSIDE_CODE:
        return "outside"
    if code == CONTOUR_CODE:
        return "contour"
    return "(" + ",".join(CHAMBERS[code - 1]) + ")"


def sign_triple(p) -> Signs:
    """Sign triple of the three interior contour inequalities, without tolerance checks."""
    res = contour_residuals(p)[:3]
    return tuple("+" if r > 0 else "-" for r in res)


def chamber_r_limits(p, label: Optional[ChamberLabel] = None) -> Tuple[float, float]:
    """Radii (r0, r1) bounding the first-derivative integral in p's chamber."""
    if label is None:
        label = membership(p)
    if not label.is_chamber:
        raise NotInChamber(f"{tuple(p)} is not in a chamber ({label})")
    ex, ey, eu = math.exp(p[0]), math.exp(p[1]), math.exp(p[2])
    lo, hi = R_LIMITS[label.signs]
    r0, r1 = lo(ex, ey, eu), hi(ex, ey, eu)
    if r0 < 0:
        log.warning("negative r0=%g in chamber %s at %s; using |r0|", r0, label, tuple(p))
        r0 = -r0
    return r0, r1


@dataclass(frozen=True)
class QuarticParams:
    A: float
    B: float
    C: float
    D: float
    P1: float
    P2: float

    @property
    def order(self) -> str:
        """Root names sorted by decreasing value, e.g. ``'ABCD'``."""
        vals = {"A": self.A, "B": self.B, "C": self.C, "D": self.D}
        return "".join(sorted(vals, key=lambda k: -vals[k]))


def quartic_params(p) -> QuarticParams:
    ex, ey, eu = math.exp(p[0]), math.exp(p[1]), math.exp(p[2])
    return QuarticParams(
        A=(1 + ex) ** 2,
        B=(ey + eu) ** 2,
        C=(1 - ex) ** 2,
        D=(ey - eu) ** 2,
        P1=ex * ex + ey * ey - 1 - eu * eu,
        P2=(1 + ex) * (1 - ex) * (ey + eu) * (eu - ey),
    )


def compactify(p) -> np.ndarray:
    """(e^x, e^y, e^u) / (1 + e^x + e^y + e^u): the point's image in the open simplex."""
    v, _ = _scaled_moduli(p)
    return v[1:] / v.sum()


def compactified_vertices(coeffs: Sequence) -> list:
    """Vertices of the compactified amoeba of a0 + a1 z1 + ... + an zn.

    Exact when all coefficient moduli are rationals (ints or Fractions);
    floats otherwise. One vertex per pair: (j, 0) gives t_j = |a0|/(|aj|+|a0|),
    (j, k) gives t_j = |ak|/(|aj|+|ak|) and t_k = |aj|/(|aj|+|ak|).
    """
    mods = [abs(a) for a in coeffs]
    if len(mods) < 2:
        raise BadCoefficients("need at least two coefficients")
    exact = all(isinstance(a, Rational) for a in coeffs)
    if exact:
        mods = [Fraction(m) for m in mods]
    zero = Fraction(0) if exact else 0.0
    n = len(mods) - 1
    for j in range(n + 1):
        for k in range(j + 1, n + 1):
            if mods[j] + mods[k] == 0:
                raise BadCoefficients(f"|a{j}| + |a{k}| vanishes")

    verts = []
    for j in range(1, n + 1):
        t = [zero] * n
        t[j - 1] = mods[0] / (mods[j] + mods[0])
        verts.append(tuple(t))
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            t = [zero] * n
            t[j - 1] = mods[k] / (mods[j] + mods[k])
            t[k - 1] = mods[j] / (mods[j] + mods[k])
            verts.append(tuple(t))
    return verts


def translate_coeffs(p, coeffs) -> LogPoint:
    """Shift p so that 1 + a1 z + a2 w + a3 t reduces to 1 + z + w + t."""
    if len(coeffs) != 3:
        raise BadCoefficients("expected three coefficients a1, a2, a3")
    if any(a == 0 for a in coeffs):
        raise BadCoefficients("coefficients must be nonzero")
    return LogPoint(*(float(c) + math.log(abs(a)) for c, a in zip(p, coeffs)))


def sample_chamber_points(signs, n, rng, lo=-2.5, hi=2.5, margin=1e-3):
    """n points of the given chamber, uniform in [lo, hi]^3 by rejection."""
    out = []
    for _ in range(20000):
        batch = rng.uniform(lo, hi, size=(256, 3))
        for p in batch:
            lab = membership(p)
            if lab.is_chamber and lab.signs == signs and lab.contour_distance > margin:
                out.append(p)
                if len(out) == n:
                    return np.array(out)
    raise NotInChamber(f"could not sample chamber {signs} in [{lo}, {hi}]^3")


def sample_contour_points(axis, n, rng, lo=-2.5, hi=2.5, margin=1e-2):
    """n points on the interior contour surface 1 + e^{p[axis]} = sum of the other two moduli.

    The two free coordinates are drawn uniformly and the third solved for;
    points near the outer boundary or the other two surfaces are rejected.
    """
    others = [i for i in range(3) if i != axis]
    out = []
    for _ in range(200000):
        q = rng.uniform(lo, hi, size=2)
        rhs = math.exp(q[0]) + math.exp(q[1]) - 1
        if rhs <= 0:
            continue
        p = np.empty(3)
        p[others] = q
        p[axis] = math.log(rhs)
        res = contour_residuals(p)
        if np.max(res[3:]) > -margin or np.delete(np.abs(res[:3]), axis).min() < margin:
            continue
        out.append(p)
        if len(out) == n:
            return np.array(out)
    raise NotInChamber("could not sample the contour surface")
