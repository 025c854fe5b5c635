#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Warped-product manifolds for warpiso.
Defines Sigma x_f R with metric dr^2 + f(r)^2 g_Sigma and the slice/slab functionals
every other module consumes.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from src.core.errors import DomainError
from src.core.numerics import integrate

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 25.0


class WarpFamily(Enum):
    """Families of warping functions"""
    COSH = "cosh"
    COSH_SCALED = "cosh-scaled"
    CUSTOM = "custom"


@dataclass(frozen=True)
class WarpFunction:
    """
    A warping factor f with closed-form first and second derivatives.

    The evaluators accept floats or numpy arrays. square_integral, when
    given, is a closed-form antiderivative of f^2 vanishing at 0, and
    square_defect a closed form of f^2 - f'^2 that stays accurate where
    f and f' agree to machine precision.
    """
    family: WarpFamily
    f: Callable = field(repr=False)
    df: Callable = field(repr=False)
    d2f: Callable = field(repr=False)
    even: bool
    name: str
    scale: float = 1.0
    square_integral: Optional[Callable] = field(default=None, repr=False)
    square_defect: Optional[Callable] = field(default=None, repr=False)

    @classmethod
    def cosh(cls):
        """The Fuchsian warp f = cosh r"""
        return cls(
            family=WarpFamily.COSH,
            f=np.cosh,
            df=np.sinh,
            d2f=np.cosh,
            even=True,
            name="cosh",
            square_integral=lambda t: 0.5 * (t + np.sinh(t) * np.cosh(t)),
            square_defect=lambda r: np.ones_like(np.asarray(r, dtype=float)),
        )

    @classmethod
    def cosh_scaled(cls, k):
        """The Fuchsian warp f = cosh(k r) for ambient curvature -k^2"""
        if not k > 0:
            raise DomainError(f"curvature parameter must be positive, got {k}")
        return cls(
            family=WarpFamily.COSH_SCALED,
            f=lambda r: np.cosh(k * r),
            df=lambda r: k * np.sinh(k * r),
            d2f=lambda r: k * k * np.cosh(k * r),
            even=True,
            name=f"cosh-scaled({k:g})",
            scale=float(k),
            square_integral=lambda t: 0.5 * (t + np.sinh(k * t) * np.cosh(k * t) / k),
            square_defect=lambda r: 1.0 + (1.0 - k * k) * np.sinh(k * r) ** 2,
        )

    @classmethod
    def custom(cls, f, df, d2f, even, name="custom", square_integral=None, square_defect=None):
        """A warp given by a closed-form evaluator triple"""
        return cls(family=WarpFamily.CUSTOM, f=f, df=df, d2f=d2f, even=bool(even),
                   name=name, square_integral=square_integral, square_defect=square_defect)

    @classmethod
    def exponential(cls):
        """f = e^r, positive but not even; the cosh identities fail for it"""
        return cls.custom(np.exp, np.exp, np.exp, even=False, name="exp",
                          square_integral=lambda t: 0.5 * np.expm1(2.0 * t))

    @classmethod
    def flat(cls):
        """f = 1, the flat cylinder"""
        one = lambda r: np.ones_like(np.asarray(r, dtype=float))
        zero = lambda r: np.zeros_like(np.asarray(r, dtype=float))
        return cls.custom(one, zero, zero, even=True, name="flat",
                          square_integral=lambda t: np.asarray(t, dtype=float))

    def eval(self, r):
        """f(r)"""
        return self.f(r)

    def deriv1(self, r):
        """f'(r)"""
        return self.df(r)

    def deriv2(self, r):
        """f''(r)"""
        return self.d2f(r)

    @property
    def is_cosh_family(self):
        return self.family in (WarpFamily.COSH, WarpFamily.COSH_SCALED)


@dataclass(frozen=True)
class BaseSurface:
    """
    A closed base surface of constant Gauss curvature.

    Lengths are in units of the hyperbolic curvature radius. Only the area
    enters the slab functionals; the curvature enters the curvature module.
    """
    curvature: float
    area: float
    euler_char: int
    genus: Optional[int] = None

    def __post_init__(self):
        if not self.area > 0:
            raise DomainError(f"base area must be positive, got {self.area}")

        # Gauss-Bonnet
        expected = 2.0 * math.pi * self.euler_char
        if abs(self.curvature * self.area - expected) > 1e-9 * max(1.0, abs(expected)):
            raise DomainError(
                f"Gauss-Bonnet violated: K * area = {self.curvature * self.area:.12g}, "
                f"2 pi chi = {expected:.12g}"
            )

        if self.genus is not None:
            if self.genus < 0:
                raise DomainError(f"genus must be non-negative, got {self.genus}")
            if self.euler_char != 2 - 2 * self.genus:
                raise DomainError(f"Euler characteristic {self.euler_char} does not match genus {self.genus}")

    @classmethod
    def hyperbolic(cls, genus):
        """A closed hyperbolic surface of the given genus"""
        if genus < 2:
            raise DomainError(f"a hyperbolic surface needs genus >= 2, got {genus}")
        return cls(curvature=-1.0, area=4.0 * math.pi * (genus - 1),
                   euler_char=2 - 2 * genus, genus=genus)

    @classmethod
    def sphere(cls):
        """The unit round sphere"""
        return cls(curvature=1.0, area=4.0 * math.pi, euler_char=2, genus=0)

    @classmethod
    def flat_torus(cls, area=1.0):
        """A flat torus of the given area"""
        return cls(curvature=0.0, area=area, euler_char=0, genus=1)


@dataclass(frozen=True)
class WarpedProduct:
    """The manifold Sigma x_f R with metric dr^2 + f(r)^2 g_Sigma"""
    base: BaseSurface
    warp: WarpFunction
    window: float = DEFAULT_WINDOW

    def __post_init__(self):
        if not self.window > 0:
            raise DomainError(f"radial window must be positive, got {self.window}")

    @classmethod
    def fuchsian(cls, genus, window=DEFAULT_WINDOW):
        """Sigma_g x R with the hyperbolic metric dr^2 + cosh^2(r) g_Sigma"""
        return cls(BaseSurface.hyperbolic(genus), WarpFunction.cosh(), window)


@dataclass(frozen=True)
class Slab:
    """The region Sigma x [lo, hi]"""
    lo: float
    hi: float

    def __post_init__(self):
        # lo == hi is the empty slab
        if self.lo > self.hi:
            raise DomainError(f"slab bounds out of order: [{self.lo}, {self.hi}]")

    @classmethod
    def symmetric(cls, x):
        return cls(-x, x)


def slice_area(m, r):
    """Area of the slice Sigma x {r}: |Sigma| f(r)^2"""
    return m.base.area * m.warp.eval(r) ** 2


def slab_volume(m, s, rel_tol=None, abs_tol=None):
    """Volume of the slab: |Sigma| times the integral of f^2 over [lo, hi]"""
    density = lambda t: float(m.warp.eval(t)) ** 2
    return m.base.area * integrate(density, s.lo, s.hi, rel_tol=rel_tol, abs_tol=abs_tol)


def slice_mean_curvature(m, r):
    """Mean curvature f'/f of the slice, toward -d/dr"""
    return m.warp.deriv1(r) / m.warp.eval(r)


def check_evenness(warp, grid, tol=1e-12):
    """Return the largest |f(r) - f(-r)| on the grid; raise if an even warp exceeds tol"""
    grid = np.asarray(grid, dtype=float)
    defect = float(np.max(np.abs(warp.eval(grid) - warp.eval(-grid))))
    if warp.even and defect > tol:
        raise DomainError(f"warp {warp.name} is declared even but |f(r) - f(-r)| = {defect:.3g}")
    return defect


def check_positive(warp, lo, hi, samples=2001):
    """Raise if f fails to be positive somewhere on [lo, hi]"""
    grid = np.linspace(lo, hi, samples)
    values = np.asarray(warp.eval(grid), dtype=float)
    if not np.all(np.isfinite(values)) or np.any(values <= 0):
        raise DomainError(f"warp {warp.name} is not positive and finite on [{lo:g}, {hi:g}]")


def derivative_order(warp, points, steps=(1e-3, 1e-4), floor=1e-12):
    """
    Observed order of the central difference against the declared f'.

    Points where the error at the larger step is already below floor carry
    no information and are skipped; if every point is skipped the
    derivative is exact to round-off and the order is reported as inf.
    """
    h1, h2 = steps
    orders = []
    for r in points:
        err1 = abs((warp.eval(r + h1) - warp.eval(r - h1)) / (2 * h1) - warp.deriv1(r))
        err2 = abs((warp.eval(r + h2) - warp.eval(r - h2)) / (2 * h2) - warp.deriv1(r))
        if err1 < floor * max(1.0, abs(warp.deriv1(r))):
            continue
        orders.append(math.log(err1 / max(err2, 1e-300)) / math.log(h1 / h2))

    return min(orders) if orders else math.inf
