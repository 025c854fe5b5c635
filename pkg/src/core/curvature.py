#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Curvature invariants for warpiso.
Ricci and scalar curvature of Sigma x_f R, slice shape operators, and the surface
energies that control minimal and stable constant mean curvature surfaces.
"""

import logging
import math
from dataclasses import asdict, dataclass

import numpy as np

from src.core.errors import DomainError
from src.core.warp_core import slice_mean_curvature

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurvatureReport:
    """Ricci curvature in the radial and a unit slice direction, and scalar curvature"""
    ric_radial: float
    ric_tangential: float
    scalar: float
    at_r: float

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class SliceShape:
    """Second fundamental form data of the slice Sigma x {r}"""
    H: float
    normA2: float
    traceless2: float
    gauss_K: float

    def to_dict(self):
        return asdict(self)


def sectional_curvatures(m, r):
    """
    Sectional curvatures of the frame split at r.

    Returns (radial, tangential): the curvature of a plane containing d/dr,
    -f''/f, and of the plane tangent to the slice, (K - f'^2)/f^2.
    """
    f = m.warp.eval(r)
    df = m.warp.deriv1(r)
    d2f = m.warp.deriv2(r)
    radial = -d2f / f
    tangential = (m.base.curvature - df * df) / (f * f)
    return radial, tangential


def curvature_at(m, r):
    """Ricci and scalar curvature of the warped product at radius r"""
    if not m.warp.eval(r) > 0:
        raise DomainError(f"warp {m.warp.name} is not positive at r = {r}")

    radial, tangential = sectional_curvatures(m, r)
    ric_radial = 2.0 * radial
    ric_tangential = radial + tangential
    scalar = ric_radial + 2.0 * ric_tangential
    return CurvatureReport(float(ric_radial), float(ric_tangential), float(scalar), float(r))


def slice_shape(m, r):
    """Shape data of the umbilic slice at r"""
    H = float(slice_mean_curvature(m, r))
    f = float(m.warp.eval(r))
    return SliceShape(H=H, normA2=2.0 * H * H, traceless2=0.0, gauss_K=m.base.curvature / (f * f))


def gauss_equation_residual(shape, ambient_sectional=-1.0):
    """Residual of the Gauss equation sec = K + (|A0|^2 - 2H^2)/2 for a surface"""
    return ambient_sectional - shape.gauss_K - 0.5 * (shape.traceless2 - 2.0 * shape.H ** 2)


def _square_defect(m, r):
    """f^2 - f'^2, equal to (1 - H^2) f^2 on the slice at r"""
    if m.warp.square_defect is not None:
        return float(m.warp.square_defect(r))
    f = float(m.warp.eval(r))
    df = float(m.warp.deriv1(r))
    return (f - df) * (f + df)


def gauss_bonnet_energy(m, r):
    """
    Integral of (1 - H^2) over the slice at r.

    Defined for hyperbolic bases only; for the cosh warp it equals the base
    area 4 pi (g - 1) for every r, the equality case of the genus bound.
    """
    if m.base.curvature != -1.0:
        raise DomainError(
            f"the energy bound is stated in hyperbolic ambient space; base curvature is {m.base.curvature}"
        )
    return float(m.base.area * _square_defect(m, r))


def stability_integrand(m, r):
    """Integral of (2 - |A|^2) over the slice at r, the stability form on constants"""
    return float(2.0 * m.base.area * _square_defect(m, r))


def energy_lower_bound_check(shape, area, genus):
    """True iff (1 - H^2) area > 2 pi (genus - 1), the bound for strongly stable CMC surfaces"""
    if genus < 2:
        raise DomainError(f"the energy lower bound needs genus >= 2, got {genus}")
    return (1.0 - shape.H ** 2) * area > 2.0 * math.pi * (genus - 1)


def conformal_coordinate(r):
    """F(r) = 2 arctan(tanh(r/2)), mapping R onto (-pi/2, pi/2)"""
    return 2.0 * np.arctan(np.tanh(np.asarray(r, dtype=float) / 2.0))


def _require_sphere(m):
    if m.base.curvature != 1.0:
        raise DomainError(f"the conformal blow-up is stated for a round sphere base; curvature is {m.base.curvature}")


def blowup_ratio(m, r):
    """
    4 (1 - tan^2(F/2)) / (F - pi/2)^2 in the conformal coordinate F.

    This is the expression the blow-up at the conformal boundary is read
    from; it grows without bound as r increases.
    """
    _require_sphere(m)
    F = float(conformal_coordinate(r))
    gap = math.pi / 2.0 - F
    # tan(F/2) = tanh(r/2), so 1 - tan^2(F/2) = sech^2(r/2)
    numerator = 4.0 / math.cosh(r / 2.0) ** 2
    return numerator / (gap * gap)


def scalar_decay_ratio(m, r):
    """(R + 6) / (F - pi/2)^2 with the true scalar curvature; tends to 4"""
    _require_sphere(m)
    F = float(conformal_coordinate(r))
    gap = math.pi / 2.0 - F
    return (curvature_at(m, r).scalar + 6.0) / (gap * gap)
