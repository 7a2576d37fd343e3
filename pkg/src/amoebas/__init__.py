"""Amoeba, Ronkin function and Ronkin measure of the hyperplane 1 + z + w + t."""

from .amoeba import ChamberLabel, LogPoint, Region, membership, translate_coeffs
from .measure import density, density_grid, total_mass
from .ronkin import (
    grad_ronkin,
    hessian_closed,
    hessian_quadrature,
    ronkin_2var_closed,
    ronkin_3var_quadrature,
)

__all__ = [
    "ChamberLabel",
    "LogPoint",
    "Region",
    "density",
    "density_grid",
    "grad_ronkin",
    "hessian_closed",
    "hessian_quadrature",
    "membership",
    "ronkin_2var_closed",
    "ronkin_3var_quadrature",
    "total_mass",
    "translate_coeffs",
]
