#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Shared numerical helpers for warpiso.
Adaptive quadrature, bracketed root finding and the Fuchsian constant alpha.
"""

import logging
import math
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from src.core.errors import BracketError, DomainError, QuadratureError

logger = logging.getLogger(__name__)

QUAD_REL_TOL = 1e-10
QUAD_ABS_TOL = 1e-14
ROOT_XTOL = 1e-14

# cosh(t)^2 times any realistic surface area stays finite up to here
MAX_COSH_PARAMETER = 300.0

_quadrature_targets = {"rel_tol": QUAD_REL_TOL, "abs_tol": QUAD_ABS_TOL}


def configure_quadrature(rel_tol=QUAD_REL_TOL, abs_tol=QUAD_ABS_TOL):
    """Set the default accuracy targets of integrate for this process"""
    if not (rel_tol > 0 and abs_tol > 0):
        raise DomainError(f"quadrature tolerances must be positive, got ({rel_tol}, {abs_tol})")
    _quadrature_targets["rel_tol"] = float(rel_tol)
    _quadrature_targets["abs_tol"] = float(abs_tol)
    logger.debug("Quadrature targets set to rel %g, abs %g", rel_tol, abs_tol)


def quadrature_tolerances():
    """The (relative, absolute) targets integrate uses when none are given"""
    return _quadrature_targets["rel_tol"], _quadrature_targets["abs_tol"]


def integrate(func, lo, hi, rel_tol=None, abs_tol=None, limit=200):
    """
    Integrate a smooth scalar function over [lo, hi] by adaptive quadrature.

    QUADPACK subdivides the interval adaptively until the error estimate
    drops below max(abs_tol, rel_tol * |value|). A warning from QUADPACK or
    an error estimate above the target raises QuadratureError with the
    interval and the achieved accuracy. Missing targets come from
    configure_quadrature.
    """
    if rel_tol is None:
        rel_tol = _quadrature_targets["rel_tol"]
    if abs_tol is None:
        abs_tol = _quadrature_targets["abs_tol"]
    if lo == hi:
        return 0.0

    result = quad(func, lo, hi, epsabs=abs_tol, epsrel=rel_tol, limit=limit, full_output=1)
    value, abserr = result[0], result[1]

    # A fourth element is only present when QUADPACK reports a problem
    if len(result) > 3:
        raise QuadratureError((lo, hi), abserr, str(result[3]).splitlines()[0])

    target = max(abs_tol, rel_tol * abs(value))
    if not math.isfinite(value) or abserr > 10.0 * target:
        raise QuadratureError((lo, hi), abserr)

    return float(value)


def find_root(func, start=0.25, limit=25.0, xtol=ROOT_XTOL):
    """
    Find the first sign change of func to the right of start and polish it
    with Brent's method.

    The bracket grows by doubling from start; if no sign change appears
    before limit a BracketError naming the scanned window is raised.
    """
    lo = start
    f_lo = func(lo)
    if f_lo == 0.0:
        return lo

    hi = lo
    while True:
        hi = min(2.0 * hi, limit)
        f_hi = func(hi)
        if np.sign(f_hi) != np.sign(f_lo):
            break
        if hi >= limit:
            raise BracketError((start, limit))
        lo, f_lo = hi, f_hi

    logger.debug("Root bracketed in [%g, %g]", lo, hi)
    return brentq(func, lo, hi, xtol=xtol, rtol=4.0 * np.finfo(float).eps, maxiter=200)


@lru_cache(maxsize=None)
def fuchsian_alpha():
    """The unique positive solution of alpha = coth(alpha)"""
    # x tanh x - 1 is increasing on (0, inf) with a single root
    return brentq(lambda x: x * math.tanh(x) - 1.0, 0.5, 2.0,
                  xtol=1e-16, rtol=4.0 * np.finfo(float).eps, maxiter=200)


def fuchsian_cheeger_constant():
    """h = 2 / alpha, the Cheeger constant of every Fuchsian manifold"""
    return 2.0 / fuchsian_alpha()


def cosh_square_integral(t):
    """Closed form of the integral of cosh^2 over [0, t]"""
    t = np.asarray(t, dtype=float)
    value = 0.5 * (t + np.sinh(t) * np.cosh(t))
    return float(value) if value.ndim == 0 else value


def solve_cosh_square_integral(target):
    """Invert t -> integral of cosh^2 over [0, t] for t >= 0"""
    if target <= 0.0:
        return 0.0
    if target > cosh_square_integral(MAX_COSH_PARAMETER):
        raise DomainError(f"integral {target:.6g} needs t > {MAX_COSH_PARAMETER:g}; "
                          f"cosh^2 overflows the double range there")
    # The integral exceeds t and grows like e^(2t)/8
    hi = min(2.0 * target, 0.5 * math.log(8.0 * target) + 1.0) if target > 1.0 else 2.0 * target
    while cosh_square_integral(hi) < target:
        hi *= 2.0
    return brentq(lambda t: cosh_square_integral(t) - target, 0.0, hi,
                  xtol=1e-15, rtol=4.0 * np.finfo(float).eps, maxiter=200)
