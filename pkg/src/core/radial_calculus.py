#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Radial calculus for warpiso.
The Laplace-Beltrami operator on radial functions, the identity suite of the cosh warp,
and the divergence-theorem calibration of symmetric slabs.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

import numpy as np

from src.core.errors import DomainError, VerificationError
from src.core.numerics import fuchsian_alpha
from src.core.warp_core import Slab, slab_volume, slice_area

logger = logging.getLogger(__name__)

DEFAULT_GRID = np.linspace(-10.0, 10.0, 1000)


@dataclass(frozen=True)
class RadialFunction:
    """A function u(r) with closed-form u' and u''"""
    eval: Callable = field(repr=False)
    deriv1: Callable = field(repr=False)
    deriv2: Callable = field(repr=False)
    name: str


def _sech(r):
    return 1.0 / np.cosh(r)


radial_identity = RadialFunction(
    eval=lambda r: np.asarray(r, dtype=float) * 1.0,
    deriv1=lambda r: np.ones_like(np.asarray(r, dtype=float)),
    deriv2=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
    name="r",
)

radial_tanh = RadialFunction(
    eval=np.tanh,
    deriv1=lambda r: _sech(r) ** 2,
    deriv2=lambda r: -2.0 * np.tanh(r) * _sech(r) ** 2,
    name="tanh",
)

radial_sech = RadialFunction(
    eval=_sech,
    deriv1=lambda r: -_sech(r) * np.tanh(r),
    deriv2=lambda r: _sech(r) * (np.tanh(r) ** 2 - _sech(r) ** 2),
    name="sech",
)

radial_sinh = RadialFunction(eval=np.sinh, deriv1=np.cosh, deriv2=np.sinh, name="sinh")

# The calibration potential of the cosh warp
radial_r_tanh = RadialFunction(
    eval=lambda r: r * np.tanh(r),
    deriv1=lambda r: np.tanh(r) + r * _sech(r) ** 2,
    deriv2=lambda r: _sech(r) ** 2 * (2.0 - 2.0 * r * np.tanh(r)),
    name="r_tanh",
)


def radial_constant(c):
    """The constant function u = c"""
    return RadialFunction(
        eval=lambda r: np.full_like(np.asarray(r, dtype=float), c),
        deriv1=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
        deriv2=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
        name=f"const({c:g})",
    )


def truncated_ground_state(half_width):
    """sech(r) cos(pi r / 2L): the Dirichlet ground state of the cosh warp on [-L, L]"""
    k = np.pi / (2.0 * half_width)

    def u(r):
        return _sech(r) * np.cos(k * r)

    def du(r):
        return -_sech(r) * (np.tanh(r) * np.cos(k * r) + k * np.sin(k * r))

    def d2u(r):
        t, s = np.tanh(r), _sech(r)
        return s * ((t * t - s * s - k * k) * np.cos(k * r) + 2.0 * k * t * np.sin(k * r))

    return RadialFunction(eval=u, deriv1=du, deriv2=d2u, name=f"ground_state(L={half_width:g})")


def finite_difference(u, h=1e-4):
    """Replace the derivatives of u by central difference stencils of step h"""
    return RadialFunction(
        eval=u.eval,
        deriv1=lambda r: (u.eval(r + h) - u.eval(r - h)) / (2.0 * h),
        deriv2=lambda r: (u.eval(r + h) - 2.0 * u.eval(r) + u.eval(r - h)) / (h * h),
        name=f"fd({u.name}, h={h:g})",
    )


def linear_combination(a, u, b, v):
    """The radial function a u + b v"""
    return RadialFunction(
        eval=lambda r: a * u.eval(r) + b * v.eval(r),
        deriv1=lambda r: a * u.deriv1(r) + b * v.deriv1(r),
        deriv2=lambda r: a * u.deriv2(r) + b * v.deriv2(r),
        name=f"{a:g}*{u.name}+{b:g}*{v.name}",
    )


def radial_laplacian(m, u, r):
    """Laplace-Beltrami of a radial function: u'' + 2 (f'/f) u'"""
    f = m.warp.eval(r)
    if np.any(np.asarray(f) <= 0):
        raise DomainError(f"warp {m.warp.name} is not positive on the requested radii")
    return u.deriv2(r) + 2.0 * (m.warp.deriv1(r) / f) * u.deriv1(r)


# Each identity pairs a test function with the exact value of its Laplacian
IDENTITIES: List[Tuple[str, RadialFunction, Callable]] = [
    ("laplacian_r", radial_identity, lambda r: 2.0 * np.tanh(r)),
    ("laplacian_sinh", radial_sinh, lambda r: 3.0 * np.sinh(r)),
    ("laplacian_sech", radial_sech, lambda r: -_sech(r)),
    ("laplacian_tanh", radial_tanh, lambda r: np.zeros_like(r)),
    ("laplacian_r_tanh", radial_r_tanh, lambda r: np.full_like(r, 2.0)),
]


@dataclass
class IdentityReport:
    """Maximum scaled residual per identity over a radial grid"""
    tolerance: float
    derivatives: str
    residuals: Dict[str, float] = field(default_factory=dict)
    worst_radius: Dict[str, float] = field(default_factory=dict)
    failures: List[Tuple[str, float, float]] = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {
            "tolerance": self.tolerance,
            "derivatives": self.derivatives,
            "passed": self.passed,
            "residuals": dict(self.residuals),
            "worst_radius": dict(self.worst_radius),
            "failures": [{"identity": name, "r": r, "residual": res} for name, r, res in self.failures],
        }


def verify_identities(m, grid=None, tol=1e-10, derivatives="analytic", h=1e-4):
    """
    Check the Laplacian identities of the cosh warp on every grid point.

    Residuals are scaled by max(1, |u|, |target|) so that the exponentially
    growing sinh identity is judged relative to its size. Failures name the
    identity and the radius of its worst residual.
    """
    grid = np.asarray(DEFAULT_GRID if grid is None else grid, dtype=float)
    if derivatives not in ("analytic", "fd"):
        raise DomainError(f"derivatives must be 'analytic' or 'fd', got {derivatives!r}")
    if not m.warp.is_cosh_family:
        logger.warning("Identity suite run on non-cosh warp %s; failures are expected", m.warp.name)

    report = IdentityReport(tolerance=tol, derivatives=derivatives)
    for name, u, target in IDENTITIES:
        trial = finite_difference(u, h) if derivatives == "fd" else u
        value = radial_laplacian(m, trial, grid)
        expected = target(grid)
        scale = np.maximum(1.0, np.maximum(np.abs(u.eval(grid)), np.abs(expected)))
        residual = np.abs(value - expected) / scale

        worst = int(np.argmax(residual))
        report.residuals[name] = float(residual[worst])
        report.worst_radius[name] = float(grid[worst])
        if residual[worst] > tol:
            report.failures.append((name, float(grid[worst]), float(residual[worst])))

    for name, r, res in report.failures:
        logger.info("Identity %s fails at r = %g (residual %.3g)", name, r, res)
    return report


@dataclass(frozen=True)
class DivergenceCheck:
    """Both sides of the integrated identity on a symmetric slab, and the calibrated bound"""
    lhs: float
    rhs: float
    calibrated_bound: float

    @property
    def is_equality(self):
        return abs(self.calibrated_bound - self.lhs) <= 1e-9 * self.calibrated_bound


def slab_divergence_check(m, x):
    """
    Integrate Laplacian(r tanh r) = 2 over the slab [-x, x].

    lhs = 2 |slab|, rhs = flux of grad(r tanh r) through both boundary
    slices. The divergence theorem makes them equal; since the flux
    density is at most alpha, lhs <= alpha |boundary| with equality only
    at x = alpha.
    """
    if not x > 0:
        raise DomainError(f"slab half-width must be positive, got {x}")

    lhs = 2.0 * slab_volume(m, Slab.symmetric(x))
    boundary = 2.0 * slice_area(m, x)
    rhs = float(radial_r_tanh.deriv1(x)) * boundary
    bound = fuchsian_alpha() * boundary

    if abs(lhs - rhs) > 1e-9 * max(1.0, abs(lhs)):
        raise VerificationError(f"divergence theorem fails on [-{x}, {x}]: {lhs!r} != {rhs!r}")
    if lhs > bound * (1.0 + 1e-12):
        raise VerificationError(f"calibration bound fails on [-{x}, {x}]: {lhs!r} > {bound!r}")

    return DivergenceCheck(lhs=lhs, rhs=rhs, calibrated_bound=float(bound))
