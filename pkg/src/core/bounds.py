#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Upper bounds on the Cheeger constant for warpiso.
Turns end genera and core volumes into a bound h(M) <= 2/alpha through the two-case
comparison with the totally geodesic model, plus the convex core quotient bound.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from scipy.special import gamma

from src.core.errors import DomainError
from src.core.numerics import (cosh_square_integral, fuchsian_alpha, fuchsian_cheeger_constant,
                               solve_cosh_square_integral)
from src.core.profiles import ModelGeometry, ratio_minimizer

logger = logging.getLogger(__name__)


class BoundCase(Enum):
    CORE_DOMINATES = "CoreDominates"
    PROFILE_CASE = "ProfileCase"


@dataclass(frozen=True)
class BoundsReport:
    """An upper bound on h(M) and how it was obtained"""
    bound: float
    case_taken: BoundCase
    equality_possible: bool
    h_fuchsian: float
    threshold: float
    excess: float
    t_optimal: Optional[float]
    relaxed_bound: Optional[float]
    model: ModelGeometry

    def to_dict(self):
        return {
            "bound": self.bound,
            "case_taken": self.case_taken.value,
            "equality_possible": self.equality_possible,
            "h_fuchsian": self.h_fuchsian,
            "threshold": self.threshold,
            "excess": self.excess,
            "t_optimal": self.t_optimal,
            "relaxed_bound": self.relaxed_bound,
            "inputs": {
                "genera": list(self.model.ends.genera),
                "tg_core_volume": self.model.tg_core_volume,
                "outermost_volume": self.model.outermost_volume,
            },
        }


def cheeger_region_volume(genus):
    """Volume and boundary area of the Cheeger slab [-alpha, alpha] of the genus g Fuchsian manifold"""
    if genus < 2:
        raise DomainError(f"the Fuchsian manifold needs genus >= 2, got {genus}")
    alpha = fuchsian_alpha()
    volume = 4.0 * math.pi * (genus - 1) * (alpha + math.sinh(alpha) * math.cosh(alpha))
    boundary_area = 8.0 * math.pi * (genus - 1) * math.cosh(alpha) ** 2
    return volume, boundary_area


def _profile_case(model):
    """
    Minimize S cosh^2 t / (|Omega_TG| + S G(t)) over t with S G(t) > excess.

    The quotient falls until the ratio minimizer and rises after it, so the
    constrained minimum sits at the larger of the two parameters.
    """
    S = model.ends.total_area
    t_star = ratio_minimizer(model)
    t_excess = solve_cosh_square_integral(model.excess / S)
    t_opt = max(t_star, t_excess)
    value = S * math.cosh(t_opt) ** 2 / (model.tg_core_volume + S * cosh_square_integral(t_opt))
    logger.debug("Profile case: t* = %.15g, t_excess = %.15g, bound %.15g", t_star, t_excess, value)
    return value, t_opt


def main_theorem_bound(model):
    """
    Upper bound on h(M) for a manifold with the given ends and core volumes.

    CoreDominates applies when the excess |Omega_0| - |Omega_TG| reaches
    half the total Cheeger region volume; the bound is then the minimal
    boundary area estimate over |Omega_0|. Otherwise the collar comparison
    is optimized over the foliation parameter.
    """
    h_fuchsian = fuchsian_cheeger_constant()
    alpha = fuchsian_alpha()
    S = model.ends.total_area
    threshold = S * cosh_square_integral(alpha)
    excess = model.excess

    relaxed = None
    if excess >= threshold and model.outermost_volume > 0:
        case = BoundCase.CORE_DOMINATES
        area = S * math.cosh(alpha) ** 2
        bound = area / model.outermost_volume
        if excess > 0:
            relaxed = area / excess
        profile_value, t_opt = _profile_case(model)
        bound = min(bound, profile_value)
    else:
        case = BoundCase.PROFILE_CASE
        bound, t_opt = _profile_case(model)

    # Rigidity: equality only for exact Fuchsian data
    equality_possible = model.tg_core_volume == 0.0 and model.outermost_volume == model.tg_core_volume

    if bound > h_fuchsian + 1e-12:
        logger.warning("Bound %.15g exceeds 2/alpha for %s", bound, model)
    return BoundsReport(
        bound=float(bound),
        case_taken=case,
        equality_possible=equality_possible,
        h_fuchsian=h_fuchsian,
        threshold=float(threshold),
        excess=float(excess),
        t_optimal=float(t_opt),
        relaxed_bound=relaxed,
        model=model,
    )


def core_quotient_bound(core_volume, genera):
    """Sum of 8 pi (g_i - 1) over the convex core volume"""
    if not core_volume > 0:
        raise DomainError(f"core volume must be positive, got {core_volume}")
    for g in genera:
        if g < 2:
            raise DomainError(f"every boundary component needs genus >= 2, got {g}")
    return sum(8.0 * math.pi * (g - 1) for g in genera) / core_volume


def reference_constants(n=3):
    """
    Cheeger constants of the comparison spaces in dimension n, as data.

    round_sphere is |S^(n-1)| / (|S^n| / 2), attained by a hemisphere;
    hyperbolic_space is n - 1; complex_hyperbolic_space is 2n for complex
    dimension n.
    """
    if n < 2:
        raise DomainError(f"dimension must be at least 2, got {n}")

    def sphere_volume(k):
        return 2.0 * math.pi ** ((k + 1) / 2.0) / gamma((k + 1) / 2.0)

    alpha = fuchsian_alpha()
    return {
        "dimension": n,
        "round_sphere": 2.0 * sphere_volume(n - 1) / sphere_volume(n),
        "hyperbolic_space": float(n - 1),
        "complex_hyperbolic_space": 2.0 * n,
        "fuchsian_alpha": alpha,
        "fuchsian_cheeger": 2.0 / alpha,
        "fuchsian_lambda0": 1.0,
        "fuchsian_cheeger_inequality": 1.0 / alpha ** 2,
    }
