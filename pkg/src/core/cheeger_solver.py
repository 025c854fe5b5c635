#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Cheeger constant solver for warpiso.
Matches the best symmetric slab (upper bound) against the calibration potential
(lower bound) and certifies h = 2/alpha for the cosh family.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from src.core.errors import DomainError, NonCertifiableError, VerificationError
from src.core.numerics import find_root, integrate
from src.core.warp_core import check_positive

logger = logging.getLogger(__name__)

SCAN_POINTS = 801
EDGE_FRACTION = 1e-3


@dataclass(frozen=True)
class CheegerCertificate:
    """Matched upper and lower bounds on the Cheeger constant"""
    upper: float
    lower: float
    alpha: float
    sup_phi_prime: float
    certified: bool
    residual: float
    tolerance: float

    @property
    def gap(self):
        return self.upper - self.lower

    def to_dict(self):
        values = asdict(self)
        values["gap"] = self.gap
        return values


class OptimalSlab(NamedTuple):
    alpha: float
    quotient: float
    is_minimum: bool


class CalibrationSupremum(NamedTuple):
    value: float
    argmax: float


def _half_square_integral(m, x):
    """Integral of f^2 over [0, x]"""
    if m.warp.square_integral is not None:
        return float(m.warp.square_integral(x))
    return integrate(lambda t: float(m.warp.eval(t)) ** 2, 0.0, x)


def slab_quotient(m, x):
    """
    Perimeter over volume of the symmetric slab [-x, x].

    The base area cancels; for an even warp this is f(x)^2 divided by the
    integral of f^2 over [0, x].
    """
    if not x > 0:
        raise DomainError(f"slab half-width must be positive, got {x}")

    perimeter = float(m.warp.eval(x)) ** 2 + float(m.warp.eval(-x)) ** 2
    volume = integrate(lambda t: float(m.warp.eval(t)) ** 2, -x, x)
    return perimeter / volume


def _stationarity(m, x):
    """A'(x) V(x) / A(x)^2 - 1 with A = f^2 and V the half-slab integral"""
    f = float(m.warp.eval(x))
    return 2.0 * float(m.warp.deriv1(x)) * _half_square_integral(m, x) / f ** 3 - 1.0


def optimal_slab(m):
    """
    The symmetric slab minimizing the perimeter to volume quotient.

    Its half-width is the root of A' V = A^2 (x tanh x = 1 for cosh),
    bracketed by doubling from 0.25 and polished by Brent's method.
    """
    if not m.warp.even:
        raise DomainError(f"optimal slab search needs an even warp, {m.warp.name} is not even")
    check_positive(m.warp, 0.0, m.window)
    grid = np.linspace(m.window / SCAN_POINTS, m.window, SCAN_POINTS)
    if np.any(np.asarray(m.warp.deriv1(grid)) <= 0):
        raise DomainError(f"warp {m.warp.name} is not increasing on (0, {m.window:g}]")

    alpha = find_root(lambda x: _stationarity(m, x), start=0.25, limit=m.window)
    quotient = slab_quotient(m, alpha)

    # Second-order check
    step = 1e-3 * alpha
    is_minimum = slab_quotient(m, alpha - step) > quotient and slab_quotient(m, alpha + step) > quotient
    if not is_minimum:
        logger.warning("Stationary slab at x = %.12g is not a local minimum for %s", alpha, m.warp.name)

    logger.debug("Optimal slab half-width %.15g, quotient %.15g", alpha, quotient)
    return OptimalSlab(float(alpha), float(quotient), bool(is_minimum))


def calibration_potential(m, r):
    """
    The odd radial solution of (f^2 phi')' = 2 f^2.

    phi'(r) = (2 / f(r)^2) times the integral of f^2 over [0, r], and phi
    integrates phi' from 0. For the cosh warp phi = r tanh r.
    """
    if not float(m.warp.eval(r)) > 0:
        raise DomainError(f"warp {m.warp.name} is not positive at r = {r}")
    phi = integrate(lambda t: _potential_slope(m, t), 0.0, r)
    return float(phi), _potential_slope(m, r)


def _potential_slope(m, r):
    return 2.0 * _half_square_integral(m, r) / float(m.warp.eval(r)) ** 2


def calibration_supremum(m, window=None):
    """
    Supremum of |phi'| over [-L, L] and where it is attained.

    A coarse scan locates the maximum, a bounded scalar search refines it.
    If the maximum sits on the window edge the bound is not certifiable.
    """
    window = m.window if window is None else window
    if not window > 0:
        raise DomainError(f"window must be positive, got {window}")
    check_positive(m.warp, -window, window)

    sides = (1.0,) if m.warp.even else (1.0, -1.0)
    best = CalibrationSupremum(-math.inf, 0.0)
    for side in sides:
        grid = side * np.linspace(0.0, window, SCAN_POINTS)
        values = np.array([abs(_potential_slope(m, r)) for r in grid])
        k = int(np.argmax(values))
        if k == SCAN_POINTS - 1:
            raise NonCertifiableError(
                f"non-certifiable warp on this window: sup |phi'| for {m.warp.name} "
                f"is attained at the edge r = {grid[k]:g}"
            )

        lo, hi = sorted((grid[max(k - 1, 0)], grid[min(k + 1, SCAN_POINTS - 1)]))
        refined = minimize_scalar(lambda r: -abs(_potential_slope(m, r)), bounds=(lo, hi),
                                  method="bounded", options={"xatol": 1e-12})
        value = -float(refined.fun)
        argmax = float(refined.x)
        if values[k] > value:
            value, argmax = float(values[k]), float(grid[k])
        if abs(argmax) >= window * (1.0 - EDGE_FRACTION):
            raise NonCertifiableError(
                f"non-certifiable warp on this window: sup |phi'| is attained near the edge r = {argmax:g}"
            )
        if value > best.value:
            best = CalibrationSupremum(value, argmax)

    return best


def cheeger_lower_bound(m, window=None):
    """Lower bound 2 / sup |phi'| on the Cheeger constant"""
    return 2.0 / calibration_supremum(m, window).value


def certify(m, tol=1e-8, window=None):
    """
    Run the slab search and the calibration bound and compare them.

    The certificate is issued when the gap is within tol and the slab is a
    genuine local minimum.
    """
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")

    slab = optimal_slab(m)
    supremum = calibration_supremum(m, window)
    upper = slab.quotient
    lower = 2.0 / supremum.value

    if lower > upper:
        # Both sides equal 2/alpha analytically; a last-digit excess is round-off
        if lower - upper > 1e-12 * upper:
            raise VerificationError(f"lower bound {lower!r} exceeds upper bound {upper!r}")
        lower = upper

    residual = abs(_stationarity(m, slab.alpha))
    certified = slab.is_minimum and (upper - lower) <= tol
    if not certified:
        logger.warning("Cheeger bounds for %s not certified: gap %.3g, tolerance %.3g",
                       m.warp.name, upper - lower, tol)

    return CheegerCertificate(
        upper=upper,
        lower=lower,
        alpha=slab.alpha,
        sup_phi_prime=supremum.value,
        certified=bool(certified),
        residual=float(residual),
        tolerance=tol,
    )
