"""Ronkin measure of 1 + z + w + t (and of 1 + z + w): density, grids, total mass.

The measure is the real Monge-Ampere measure of the Ronkin function, so off
the contour its density is the determinant of the Hessian. Inside the
amoeba of 1 + z + w that determinant is identically 1/pi^2.
"""

import csv
import io
import json
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .amoeba import CONTOUR_CODE, OUTSIDE_CODE, Region, classify_batch, code_label, membership
from .errors import BadParameter, BoxTooSmall
from .ronkin import hessian_2var, hessian_closed, hessian_closed_batch

log = logging.getLogger(__name__)

__all__ = [
    "DensityGrid",
    "GridOptions",
    "MassOptions",
    "MassReport",
    "PointDensity",
    "density",
    "density_2var",
    "density_floor_scan",
    "density_grid",
    "density_info",
    "total_mass",
]

INV_PI2 = 1.0 / math.pi**2
POLYNOMIAL_ID = {2: "1+z+w", 3: "1+z+w+t"}
NEWTON_VOLUME = {2: 0.5, 3: 1.0 / 6.0}


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("RONKIN_THREADS", "1")))
    except ValueError:
        return 1


def _chunked_map(fn, items, chunk):
    """Apply fn to consecutive slices of items; results come back in slice order."""
    slices = [items[i : i + chunk] for i in range(0, len(items), chunk)]
    nthreads = _workers()
    if nthreads == 1 or len(slices) < 2:
        return [fn(s) for s in slices]
    with ThreadPoolExecutor(max_workers=nthreads) as pool:
        return list(pool.map(fn, slices))


# --- pointwise density ---------------------------------------------------------


@dataclass(frozen=True)
class PointDensity:
    value: float
    label: str
    # set when the value is a limit taken from the adjacent chambers
    contour_limit: bool = False


def density_info(p) -> PointDensity:
    """Density of the Ronkin measure at p with its label.

    On the contour the value is the limit from the adjacent chambers: 0 on
    the outer boundary, +inf on the three interior surfaces, where the
    second derivatives grow like log(1/distance).
    """
    label = membership(p)
    if label.region is Region.OUTSIDE:
        return PointDensity(0.0, str(label))
    if label.region is Region.CHAMBER:
        return PointDensity(max(0.0, float(np.linalg.det(hessian_closed(p)))), str(label))
    value = _contour_limit(p)
    log.warning("density at contour point %s reported as chamber limit %g", tuple(p), value)
    return PointDensity(value, str(label), contour_limit=True)


def _contour_limit(p) -> float:
    from .amoeba import contour_residuals

    res = np.abs(contour_residuals(p))
    return math.inf if res[:3].min() <= res[3:].min() else 0.0


def density(p) -> float:
    return density_info(p).value


def _in_2var(X, Y):
    v = np.stack([np.ones_like(X), X, Y], axis=-1)
    return (2 * v.max(axis=-1) - v.sum(axis=-1)) < 0


def density_2var(p) -> float:
    """det of the Hessian of the Ronkin function of 1 + z + w at p = (x, y)."""
    return float(np.linalg.det(hessian_2var(*p)))


def _density_2var_batch(pts):
    X, Y = np.exp(pts[:, 0]), np.exp(pts[:, 1])
    inside = _in_2var(X, Y)
    out = np.zeros(len(pts))
    X, Y = X[inside], Y[inside]
    # det of the analytic Hessian: alpha_x beta_y - alpha_y beta_x over pi^2
    ca = (1 + Y * Y - X * X) / (2 * Y)
    cb = (1 + X * X - Y * Y) / (2 * X)
    sa = np.sqrt(np.clip(1 - ca * ca, 0, None))
    sb = np.sqrt(np.clip(1 - cb * cb, 0, None))
    s = X * X + Y * Y - 1
    det = (X * Y / (sa * sb) - s * s / (4 * X * Y * sa * sb)) / math.pi**2
    out[inside] = det
    return out


def _density_3var_batch(pts):
    codes = classify_batch(pts)
    H = hessian_closed_batch(pts, codes)
    d = np.zeros(len(pts))
    live = codes > 0
    if np.any(live):
        d[live] = np.linalg.det(H[live])
    return np.maximum(d, 0.0), codes


# --- grids ----------------------------------------------------------------------


@dataclass
class GridOptions:
    chunk: int = 4096
    tol: float = 1e-9
    timestamp: Optional[str] = None


@dataclass
class DensityGrid:
    box: tuple
    resolution: tuple
    axes: list
    density: np.ndarray
    codes: np.ndarray
    metadata: dict = field(default_factory=dict)

    @property
    def points(self) -> np.ndarray:
        mesh = np.meshgrid(*self.axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    @property
    def labels(self) -> list:
        return [code_label(int(c)) for c in self.codes]

    @property
    def values(self) -> list:
        return [{"density": float(d), "label": lab} for d, lab in zip(self.density, self.labels)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "u", "density", "chamber"])
        for pt, d, lab in zip(self.points, self.density, self.labels):
            w.writerow([_fmt(v) for v in pt] + [_fmt(d), lab])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "metadata": self.metadata,
            "axes": [[_num(v) for v in ax] for ax in self.axes],
            "values": [
                {"density": _num(d), "chamber": lab} for d, lab in zip(self.density, self.labels)
            ],
        }
        return json.dumps(doc, indent=1)


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _num(v):
    """JSON number with 17 significant digits; non-finite values become null."""
    v = float(v)
    if not math.isfinite(v):
        return None
    return json.loads(_fmt(v))


def _check_box(box, dims=None):
    box = tuple((float(a), float(b)) for a, b in box)
    if dims is not None and len(box) != dims:
        raise BadParameter(f"box needs {dims} intervals")
    for a, b in box:
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise BadParameter(f"bad box interval {(a, b)}")
    return box


def density_grid(box, resolution, opts: Optional[GridOptions] = None) -> DensityGrid:
    """Density on the lattice of ``resolution`` points per axis spanning ``box`` (endpoints included)."""
    opts = opts or GridOptions()
    box = _check_box(box, 3)
    if isinstance(resolution, int):
        resolution = (resolution,) * 3
    resolution = tuple(int(n) for n in resolution)
    if len(resolution) != 3 or min(resolution) < 2:
        raise BadParameter("resolution must be >= 2 on each of the three axes")
    axes = [np.linspace(a, b, n) for (a, b), n in zip(box, resolution)]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)

    def work(chunk):
        codes = classify_batch(chunk, opts.tol)
        H = hessian_closed_batch(chunk, codes)
        d = np.zeros(len(chunk))
        live = codes > 0
        if np.any(live):
            d[live] = np.maximum(np.linalg.det(H[live]), 0.0)
        on = np.flatnonzero(codes == CONTOUR_CODE)
        for i in on:
            d[i] = _contour_limit(chunk[i])
        return d, codes

    parts = _chunked_map(work, pts, opts.chunk)
    dens = np.concatenate([p[0] for p in parts]) if parts else np.zeros(0)
    codes = np.concatenate([p[1] for p in parts]) if parts else np.zeros(0, int)
    n_contour = int(np.count_nonzero(codes == CONTOUR_CODE))
    if n_contour:
        log.warning("%d grid points lie on the contour; reported as chamber limits", n_contour)
    metadata = {
        "polynomial": POLYNOMIAL_ID[3],
        "contour_tol": opts.tol,
        "contour_value": "chamber limit: 0 on the boundary, null (infinite) on interior surfaces",
        "timestamp": opts.timestamp,
    }
    return DensityGrid(box, resolution, axes, dens, codes, metadata)


def density_floor_scan(box, resolution, vars: int = 3, margin: float = 1e-3) -> dict:
    """Summary statistics of the density over grid points inside the amoeba.

    Points closer than ``margin`` (relative residual) to the contour are left
    out. Returns ``count == 0`` and no other statistics when the grid misses
    the amoeba.
    """
    box = _check_box(box, vars)
    if isinstance(resolution, int):
        resolution = (resolution,) * vars
    axes = [np.linspace(a, b, n) for (a, b), n in zip(box, resolution)]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)
    if vars == 2:
        X, Y = np.exp(pts[:, 0]), np.exp(pts[:, 1])
        v = np.stack([np.ones_like(X), X, Y], axis=-1)
        v = v / v.max(axis=-1, keepdims=True)
        keep = (v.sum(axis=-1) - 2 * v.max(axis=-1)) > margin
        vals = _density_2var_batch(pts[keep])
    elif vars == 3:
        codes = classify_batch(pts, tol=margin)
        keep = codes > 0
        vals = _density_3var_batch(pts[keep])[0]
    else:
        raise BadParameter("vars must be 2 or 3")
    if len(vals) == 0:
        return {"count": 0}
    q = np.quantile(vals, [0.05, 0.25, 0.5, 0.75, 0.95])
    return {
        "count": int(len(vals)),
        "min": float(vals.min()),
        "max": float(vals.max()),
        "mean": float(vals.mean()),
        "quantiles": {k: float(v) for k, v in zip(("q05", "q25", "q50", "q75", "q95"), q)},
    }


# --- total mass -------------------------------------------------------------------


@dataclass
class MassOptions:
    cell: float = 0.25
    order: int = 3
    # extra halvings for cells cut by the contour (3 vars) or the boundary (2 vars)
    contour_depth: int = 1
    boundary_depth_2var: int = 4
    margin: float = 2.0
    min_coverage: float = 0.99
    chunk: int = 2048


@dataclass
class MassReport:
    mass: float
    newton_volume: float
    coverage_estimate: float
    box: tuple
    cells: int = 0
    evaluations: int = 0

    @property
    def relative_error(self) -> float:
        return abs(self.mass - self.newton_volume) / self.newton_volume


def _moduli_bounds(lo, hi):
    """Interval bounds of (1, e^{x_1}, ..., e^{x_n}) over cells [lo, hi]."""
    one = np.ones((len(lo), 1))
    return np.hstack([one, np.exp(lo)]), np.hstack([one, np.exp(hi)])


def _cell_flags(lo, hi):
    """(maybe inside the amoeba, cut by the boundary, cut by an interior contour) per cell."""
    mlo, mhi = _moduli_bounds(lo, hi)
    slo, shi = mlo.sum(axis=1), mhi.sum(axis=1)
    # v_i - sum of the others, over the cell
    blo = mlo - (shi[:, None] - mhi)
    bhi = mhi - (slo[:, None] - mlo)
    maybe = ~np.any(blo > 0, axis=1)
    cut_boundary = np.any((blo <= 0) & (bhi >= 0), axis=1)
    cut_interior = np.zeros(len(lo), dtype=bool)
    if lo.shape[1] == 3:
        # 1 + v_i - (sum of the two others), i = x, y, u
        for i in (1, 2, 3):
            j, k = [m for m in (1, 2, 3) if m != i]
            rlo = 1 + mlo[:, i] - mhi[:, j] - mhi[:, k]
            rhi = 1 + mhi[:, i] - mlo[:, j] - mlo[:, k]
            cut_interior |= (rlo <= 0) & (rhi >= 0)
    return maybe, cut_boundary, cut_interior


def _split(lo, hi):
    """Halve each cell along every axis."""
    n, dim = lo.shape
    mid = (lo + hi) / 2
    corners = np.array(np.meshgrid(*[[0, 1]] * dim, indexing="ij")).reshape(dim, -1).T
    new_lo = np.where(corners[None], mid[:, None, :], lo[:, None, :]).reshape(-1, dim)
    new_hi = np.where(corners[None], hi[:, None, :], mid[:, None, :]).reshape(-1, dim)
    return new_lo, new_hi


def _lattice_cells(box, h, breaks=None):
    """Cells of the lattice h*Z^n clipped to box and cut at ``breaks[i]`` on axis i, in C order."""
    edges = []
    for i, (a, b) in enumerate(box):
        k0, k1 = math.floor(a / h), math.ceil(b / h)
        e = np.clip(np.arange(k0, k1 + 1) * h, a, b)
        if breaks is not None:
            e = np.concatenate([e, [v for v in breaks[i] if a < v < b]])
        edges.append(np.unique(e))
    lo_axes = [e[:-1] for e in edges]
    hi_axes = [e[1:] for e in edges]
    lo = np.stack([m.ravel() for m in np.meshgrid(*lo_axes, indexing="ij")], axis=-1)
    hi = np.stack([m.ravel() for m in np.meshgrid(*hi_axes, indexing="ij")], axis=-1)
    return lo, hi


def _refine(lo, hi, depth, vars):
    """Drop cells that miss the amoeba and halve cut cells up to ``depth`` times."""
    done_lo, done_hi = [], []
    for level in range(depth + 1):
        maybe, cut_b, cut_i = _cell_flags(lo, hi)
        lo, hi = lo[maybe], hi[maybe]
        cut = (cut_b if vars == 2 else cut_i)[maybe]
        if level == depth:
            done_lo.append(lo)
            done_hi.append(hi)
            break
        done_lo.append(lo[~cut])
        done_hi.append(hi[~cut])
        lo, hi = _split(lo[cut], hi[cut])
    return np.concatenate(done_lo), np.concatenate(done_hi)


def _integrate_cells(lo, hi, order, vars, chunk):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes, weights = (nodes + 1) / 2, weights / 2
    grid = np.stack(np.meshgrid(*[nodes] * vars, indexing="ij"), axis=-1).reshape(-1, vars)
    w = np.prod(np.stack(np.meshgrid(*[weights] * vars, indexing="ij"), axis=-1).reshape(-1, vars), axis=1)
    dens_fn = _density_2var_batch if vars == 2 else (lambda p: _density_3var_batch(p)[0])
    cells = np.hstack([lo, hi])

    def work(block):
        blo, bhi = block[:, :vars], block[:, vars:]
        size = bhi - blo
        pts = blo[:, None, :] + size[:, None, :] * grid[None]
        d = dens_fn(pts.reshape(-1, vars)).reshape(len(blo), -1)
        return (d @ w) * np.prod(size, axis=1)

    parts = _chunked_map(work, cells, chunk)
    return np.concatenate(parts) if parts else np.zeros(0)


def _mass_in(box, opts, vars, breaks=None):
    lo, hi = _lattice_cells(box, opts.cell, breaks)
    depth = opts.boundary_depth_2var if vars == 2 else opts.contour_depth
    lo, hi = _refine(lo, hi, depth, vars)
    per_cell = _integrate_cells(lo, hi, opts.order, vars, opts.chunk)
    return lo, hi, per_cell


def total_mass(box, opts: Optional[MassOptions] = None) -> MassReport:
    """Integrate the density over box (2 or 3 intervals) with a Gauss-Legendre product rule.

    Cells of a lattice anchored at the origin are discarded when an interval
    test shows they miss the amoeba; cells cut by the contour (3 vars) or by
    the boundary (2 vars, where the density jumps) are halved further. The
    tail beyond the box is estimated from the mass in a shell of width
    ``opts.margin`` around it: coverage = mass(box) / mass(box + shell).
    """
    opts = opts or MassOptions()
    box = _check_box(box)
    vars = len(box)
    if vars not in (2, 3):
        raise BadParameter("box must have 2 or 3 intervals")
    if opts.cell <= 0 or opts.order < 1:
        raise BadParameter("cell must be positive and order >= 1")
    outer = tuple((a - opts.margin, b + opts.margin) for a, b in box)
    lo, hi, per_cell = _mass_in(outer, opts, vars, breaks=box)
    blo = np.array([a for a, _ in box])
    bhi = np.array([b for _, b in box])
    inside = np.all((lo >= blo - 1e-12) & (hi <= bhi + 1e-12), axis=1)
    mass = float(per_cell[inside].sum())
    total = float(per_cell.sum())
    coverage = mass / total if total > 0 else 0.0
    report = MassReport(
        mass=mass,
        newton_volume=NEWTON_VOLUME[vars],
        coverage_estimate=coverage,
        box=box,
        cells=int(inside.sum()),
        evaluations=int(len(lo) * opts.order**vars),
    )
    if coverage < opts.min_coverage:
        raise BoxTooSmall(
            f"coverage estimate {coverage:.4f} below {opts.min_coverage} (mass {mass:.6g})"
        )
    return report
