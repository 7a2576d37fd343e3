"""Command-line interface: ``python3 -m amoebas <command> ...``.

Exit codes: 0 success (for ``verify``: every suite passed), 1 numerical
failure or failed suite, 2 usage error.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import measure, ronkin
from .amoeba import membership, translate_coeffs
from .errors import AmoebaError, BadCoefficients, BadParameter, DomainError, NotInChamber

COMMANDS = ("eval", "grad", "hessian", "density", "grid", "mass", "mahler", "verify")


@dataclass
class RunConfig:
    command: str
    point: Optional[List[float]] = None
    vars: Optional[int] = None
    box: Optional[List[float]] = None
    resolution: Optional[List[int]] = None
    coeffs: Optional[List[complex]] = None
    tol: float = 1e-7
    format: str = "text"
    seed: int = 0
    method: str = "both"
    a: Optional[float] = None
    extra: dict = field(default_factory=dict)


class UsageError(Exception):
    pass


def _num(v):
    v = float(v)
    if not math.isfinite(v):
        return None
    return json.loads(format(v, ".17g"))


def _jsonable(obj, strict=True):
    """Plain Python types; with ``strict`` non-finite floats become None (JSON null)."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v, strict) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v, strict) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist(), strict)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj) if strict else float(obj)
    return obj


def _cell(v):
    # text/csv spell non-finite values out instead of JSON's null
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if isinstance(v, list):
        return "[" + ", ".join(_cell(x) for x in v) + "]"
    return json.dumps(v)


def _flatten(prefix, obj, rows):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(obj, list) and obj and isinstance(obj[0], (list, dict)):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, obj))


def _render(doc, fmt):
    doc = _jsonable(doc, strict=fmt == "json")
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    rows = []
    _flatten("", doc, rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in rows:
            w.writerow([k, _cell(v)])
        return buf.getvalue()
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {_cell(v)}\n" for k, v in rows)


# --- commands -----------------------------------------------------------------


def _point(cfg, dims=None):
    if cfg.point is None:
        raise UsageError("--point is required")
    if dims is not None and len(cfg.point) != dims:
        raise UsageError(f"--point needs {dims} coordinates")
    return list(cfg.point)


def _coeff_point(cfg, p):
    if cfg.coeffs is None:
        return p
    if len(cfg.coeffs) != len(p):
        raise UsageError(f"--coeffs needs {len(p)} values")
    if len(p) == 3:
        return list(translate_coeffs(p, cfg.coeffs))
    if any(a == 0 for a in cfg.coeffs):
        raise BadCoefficients("coefficients must be nonzero")
    return [c + math.log(abs(a)) for c, a in zip(p, cfg.coeffs)]


def cmd_eval(cfg):
    p = _point(cfg)
    nvars = cfg.vars or len(p)
    if nvars != len(p) or nvars not in (1, 2, 3):
        raise UsageError("--vars must be 1, 2 or 3 and match the number of coordinates")
    q = _coeff_point(cfg, p)
    out = {"vars": nvars, "point": p}
    if nvars == 1:
        a1 = cfg.coeffs[0] if cfg.coeffs else 1.0
        roots = [-1.0 / a1]
        out["closed"] = ronkin.ronkin_1var(roots, a1, p[0])
        out["quadrature"] = ronkin.ronkin_1var_quadrature(roots, a1, p[0])
        out["value"] = out["closed"]
    elif nvars == 2:
        out["closed"] = ronkin.ronkin_2var_closed(*q)
        out["quadrature"] = ronkin.ronkin_2var_quadrature(*q)
        out["value"] = out["closed"]
    else:
        out["quadrature"] = ronkin.ronkin_3var_quadrature(q, tol=cfg.tol)
        out["value"] = out["quadrature"]
        out["label"] = str(membership(q))
    return out, True


def cmd_grad(cfg):
    p = _coeff_point(cfg, _point(cfg, 3))
    methods = ["table", "angle"] if cfg.method == "both" else [cfg.method]
    if any(m not in ("table", "angle") for m in methods):
        raise UsageError("grad --method must be table, angle or both")
    out = {"point": p}
    for m in methods:
        r = ronkin.grad_ronkin(p, m)
        out[m] = r.grad
        out["label"] = str(r.label)
    return out, True


def cmd_hessian(cfg):
    p = _coeff_point(cfg, _point(cfg, 3))
    methods = ["closed", "quadrature"] if cfg.method == "both" else [cfg.method]
    fns = {"closed": ronkin.hessian_closed, "quadrature": ronkin.hessian_quadrature}
    if any(m not in fns for m in methods):
        raise UsageError("hessian --method must be closed, quadrature or both")
    out = {"point": p, "label": str(membership(p))}
    for m in methods:
        out[m] = fns[m](p)
    if len(methods) == 2:
        diff = np.abs(out["closed"] - out["quadrature"]).max()
        out["max_abs_difference"] = diff
    return out, True


def cmd_density(cfg):
    p = _point(cfg)
    if len(p) == 2:
        q = _coeff_point(cfg, p)
        return {"point": p, "vars": 2, "density": measure.density_2var(q)}, True
    if len(p) != 3:
        raise UsageError("--point needs 2 or 3 coordinates")
    q = _coeff_point(cfg, p)
    info = measure.density_info(q)
    return {
        "point": p,
        "vars": 3,
        "density": info.value,
        "label": info.label,
        "contour_limit": info.contour_limit,
    }, True


def _box(cfg, default_dims):
    vals = cfg.box if cfg.box is not None else [-8.0, 8.0] * default_dims
    if len(vals) % 2 or len(vals) // 2 not in (2, 3):
        raise UsageError("--box takes 4 or 6 numbers: lo hi per axis")
    return [(vals[2 * i], vals[2 * i + 1]) for i in range(len(vals) // 2)]


def cmd_grid(cfg):
    box = _box(cfg, 3) if cfg.box is not None else [(-2.0, 2.0)] * 3
    res = cfg.resolution or [5]
    res = res * 3 if len(res) == 1 else res
    grid = measure.density_grid(box, res)
    if cfg.format == "csv":
        return grid.to_csv(), True
    if cfg.format == "json":
        return grid.to_json() + "\n", True
    stats = measure.density_floor_scan(box, res)
    return {"box": box, "resolution": res, "points": len(grid.density), "interior": stats}, True


def cmd_mass(cfg):
    box = _box(cfg, cfg.vars or 3)
    opts = measure.MassOptions(**cfg.extra)
    r = measure.total_mass(box, opts)
    return {
        "mass": r.mass,
        "newton_volume": r.newton_volume,
        "relative_error": r.relative_error,
        "coverage_estimate": r.coverage_estimate,
        "box": r.box,
        "cells": r.cells,
        "evaluations": r.evaluations,
    }, True


def cmd_mahler(cfg):
    out = {"m(1+z+w)": {"closed": ronkin.mahler_1zw(), "quadrature": ronkin.ronkin_2var_quadrature(0, 0)}}
    if cfg.a is not None:
        if not cfg.a > 0:
            raise UsageError("--a must be positive")
        la = math.log(cfg.a)
        closed = ronkin.mahler_1zawat(cfg.a)
        quad = ronkin.ronkin_3var_quadrature((0.0, la, la), tol=cfg.tol)
        out["m(1+z+aw+at)"] = {"a": cfg.a, "closed": closed, "quadrature": quad, "difference": abs(closed - quad)}
    return out, True


def cmd_verify(cfg):
    from .suites import run_all

    results, report = run_all(cfg.seed)
    ok = all(r.passed for r in results)
    if cfg.format == "text":
        lines = [f"{'suite':<30} {'result':<6} {'worst':>10} {'tol':>8} {'cases':>6}"]
        for r in results:
            flag = "PASS" if r.passed else "FAIL"
            lines.append(f"{r.name:<30} {flag:<6} {r.worst:10.3e} {r.tol:8.1e} {r.cases:6d}")
        lines.append("")
        lines.append("closed-form vs quadrature Hessian, max relative error per chamber")
        lines.append(f"{'chamber':<10} {'d2/dx2':>10} {'d2/dxdy':>10}")
        for signs, (exx, exy) in report.items():
            lines.append(f"{'(' + ','.join(signs) + ')':<10} {exx:10.3e} {exy:10.3e}")
        lines.append("")
        lines.append("all suites passed" if ok else "some suites FAILED")
        return "\n".join(lines) + "\n", ok
    doc = {
        "seed": cfg.seed,
        "passed": ok,
        "suites": [
            {"name": r.name, "passed": r.passed, "worst": r.worst, "tol": r.tol, "cases": r.cases}
            for r in results
        ],
        "chamber_discrepancy": {"(" + ",".join(s) + ")": {"xx": v[0], "xy": v[1]} for s, v in report.items()},
    }
    return doc, ok


HANDLERS = {
    "eval": cmd_eval,
    "grad": cmd_grad,
    "hessian": cmd_hessian,
    "density": cmd_density,
    "grid": cmd_grid,
    "mass": cmd_mass,
    "mahler": cmd_mahler,
    "verify": cmd_verify,
}


# --- argument parsing ---------------------------------------------------------------


def _positive(v):
    x = float(v)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _complex(v):
    try:
        return complex(v.replace("i", "j"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {v}") from exc


def build_parser():
    parser = argparse.ArgumentParser(prog="amoebas", description="Ronkin function and measure of 1+z+w+t.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--tol", type=_positive, default=1e-7)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--coeffs", type=_complex, nargs="+", help="coefficients a1 a2 [a3] of 1 + a1 z + ...")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="Ronkin function value")
    p.add_argument("--point", type=float, nargs="+", required=True)
    p.add_argument("--vars", type=int, choices=(1, 2, 3))

    p = sub.add_parser("grad", parents=[common], help="gradient of the Ronkin function")
    p.add_argument("--point", type=float, nargs=3, required=True)
    p.add_argument("--method", choices=("table", "angle", "both"), default="both")

    p = sub.add_parser("hessian", parents=[common], help="Hessian at a chamber point")
    p.add_argument("--point", type=float, nargs=3, required=True)
    p.add_argument("--method", choices=("closed", "quadrature", "both"), default="both")

    p = sub.add_parser("density", parents=[common], help="density of the Ronkin measure")
    p.add_argument("--point", type=float, nargs="+", required=True)

    p = sub.add_parser("grid", parents=[common], help="density on a lattice")
    p.add_argument("--box", type=float, nargs=6)
    p.add_argument("--resolution", type=int, nargs="+")

    p = sub.add_parser("mass", parents=[common], help="total mass over a box")
    p.add_argument("--box", type=float, nargs="+")
    p.add_argument("--vars", type=int, choices=(2, 3))
    p.add_argument("--cell", type=_positive)
    p.add_argument("--order", type=int)
    p.add_argument("--min-coverage", type=float)

    p = sub.add_parser("mahler", parents=[common], help="Mahler measures of 1+z+w and 1+z+aw+at")
    p.add_argument("--a", type=float)

    sub.add_parser("verify", parents=[common], help="run the invariant suites")
    return parser


def config_from_args(ns) -> RunConfig:
    extra = {}
    for name in ("cell", "order", "min_coverage"):
        v = getattr(ns, name, None)
        if v is not None:
            extra[name] = v
    res = getattr(ns, "resolution", None)
    if res is not None and (len(res) not in (1, 3) or min(res) < 2):
        raise UsageError("--resolution takes 1 or 3 integers, each >= 2")
    return RunConfig(
        command=ns.command,
        point=getattr(ns, "point", None),
        vars=getattr(ns, "vars", None),
        box=getattr(ns, "box", None),
        resolution=res,
        coeffs=ns.coeffs,
        tol=ns.tol,
        format=ns.format,
        seed=ns.seed,
        method=getattr(ns, "method", "both"),
        a=getattr(ns, "a", None),
        extra=extra,
    )


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        doc, ok = HANDLERS[cfg.command](cfg)
    except (UsageError, BadParameter, BadCoefficients) as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except (NotInChamber, DomainError, AmoebaError, ArithmeticError) as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    out.write(doc if isinstance(doc, str) else _render(doc, cfg.format))
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except UsageError as exc:
        parser.error(str(exc))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
