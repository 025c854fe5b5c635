#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Model isoperimetric profiles for warpiso.
The totally geodesic core model I_TG, the Fuchsian profile I_F, equidistant foliation
ratios, the slab profile beta, profile comparison and the renormalized-volume estimate.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple

import numpy as np
from scipy.optimize import brentq

from src.core.errors import (DomainError, InsufficientRangeError, ProfileValidationError,
                             VerificationError)
from src.core.numerics import (MAX_COSH_PARAMETER, cosh_square_integral, fuchsian_alpha, integrate,
                               solve_cosh_square_integral)
from src.core.warp_core import WarpFamily

logger = logging.getLogger(__name__)

EQUALITY_RTOL = 1e-9
TAIL_SLOPE_TOL = 1e-6
TAIL_DECADE = 10.0


class ProfileKind(Enum):
    I_TG = "I_TG"
    I_F = "I_F"
    BETA = "beta"
    EXTERNAL = "external"


@dataclass(frozen=True)
class EndData:
    """Genera of the ends; each end carries a Fuchsian collar over a genus g surface"""
    genera: Tuple[int, ...]

    def __post_init__(self):
        genera = tuple(int(g) for g in self.genera)
        if not genera:
            raise DomainError("at least one end is required")
        for g in genera:
            if g < 2:
                raise DomainError(f"every end needs genus >= 2, got {g}")
        object.__setattr__(self, "genera", genera)

    @property
    def areas(self):
        """S_i = 4 pi (g_i - 1), the Gauss-Bonnet area of each end's core boundary"""
        return tuple(4.0 * math.pi * (g - 1) for g in self.genera)

    @property
    def total_area(self):
        return float(sum(self.areas))


@dataclass(frozen=True)
class ModelGeometry:
    """End data with the totally geodesic core volume and the outermost region volume"""
    ends: EndData
    tg_core_volume: float = 0.0
    outermost_volume: float = 0.0

    def __post_init__(self):
        if not self.tg_core_volume >= 0:
            raise DomainError(f"core volume must be non-negative, got {self.tg_core_volume}")
        if not self.outermost_volume >= 0:
            raise DomainError(f"outermost volume must be non-negative, got {self.outermost_volume}")
        if self.outermost_volume < self.tg_core_volume:
            raise DomainError(
                f"outermost volume {self.outermost_volume} is below the core volume {self.tg_core_volume}"
            )

    @classmethod
    def from_genera(cls, genera, tg_core_volume=0.0, outermost_volume=None):
        """Build a model; the outermost volume defaults to the core volume"""
        if outermost_volume is None:
            outermost_volume = tg_core_volume
        return cls(EndData(tuple(genera)), float(tg_core_volume), float(outermost_volume))

    @property
    def excess(self):
        return self.outermost_volume - self.tg_core_volume


@dataclass(frozen=True)
class ProfileCurve:
    """Sampled (V, A) pairs of an area-volume profile"""
    samples: Tuple[Tuple[float, float], ...]
    kind: ProfileKind = ProfileKind.EXTERNAL

    def __post_init__(self):
        samples = tuple((float(v), float(a)) for v, a in self.samples)
        if not samples:
            raise ProfileValidationError("a profile curve needs at least one sample")

        values = np.asarray(samples)
        if not np.all(np.isfinite(values)):
            raise ProfileValidationError("profile samples must be finite")
        if np.any(values[:, 0] < 0):
            raise ProfileValidationError("profile volumes must be non-negative")

        for i in range(1, len(samples)):
            if samples[i][0] <= samples[i - 1][0]:
                raise ProfileValidationError(f"volumes not strictly increasing at sample {i}: V = {samples[i][0]!r}")
            if samples[i][1] <= samples[i - 1][1]:
                raise ProfileValidationError(f"areas not strictly increasing at sample {i}: A = {samples[i][1]!r}")

        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "kind", ProfileKind(self.kind))

    @property
    def volumes(self):
        return np.array([v for v, _ in self.samples])

    @property
    def areas(self):
        return np.array([a for _, a in self.samples])

    def __len__(self):
        return len(self.samples)


def sample_profile(profile, volumes, kind=ProfileKind.EXTERNAL):
    """Evaluate a profile function V -> A at the given volumes"""
    return ProfileCurve(tuple((float(v), float(profile(v))) for v in volumes), kind)


# Model profiles

def end_profile(area, V):
    """Boundary area of the collar of volume V on a single Fuchsian end of core area S"""
    if V < 0:
        raise DomainError(f"volume must be non-negative, got {V}")
    t = solve_cosh_square_integral(V / area)
    return area * math.cosh(t) ** 2


def fuchsian_profile(base_area, V):
    """I_F: boundary area of the symmetric slab of volume V in Sigma x_cosh R"""
    if V < 0:
        raise DomainError(f"volume must be non-negative, got {V}")
    r = solve_cosh_square_integral(V / (2.0 * base_area))
    return 2.0 * base_area * math.cosh(r) ** 2


def tg_parameter(model, V):
    """The common equidistant parameter t with sum S_i G(t) = V"""
    if V < 0:
        raise DomainError(f"volume must be non-negative, got {V}")
    return solve_cosh_square_integral(V / model.ends.total_area)


def tg_profile(model, V):
    """
    I_TG(V): area of the equidistant collar of volume V around the core.

    Volume is spread over the ends by one parameter t, so all boundary
    components share the mean curvature tanh t.
    """
    t = tg_parameter(model, V)
    return model.ends.total_area * math.cosh(t) ** 2


def tg_profile_slope(model, V):
    """dI_TG/dV = 2 tanh t(V), twice the common mean curvature"""
    return 2.0 * math.tanh(tg_parameter(model, V))


# Equidistant foliations

def _ratio_threshold():
    # Beyond this t every model has ratio < 2; it solves t = (1 + e^(-2t)) / 2
    return brentq(lambda t: t - 0.5 * (1.0 + math.exp(-2.0 * t)), 0.0, 1.0, xtol=1e-15)


RATIO_THRESHOLD = _ratio_threshold()


def ratio_bounded_everywhere(model):
    """Whether the ratio stays below 2 for every t >= 0, i.e. |Omega_TG| > sum S_i / 2"""
    return model.tg_core_volume > 0.5 * model.ends.total_area


def equidistant_ratio(model, t):
    """
    |boundary| / |volume| of the equidistant region U_t around the core.

    The value is checked to be below 2 whenever that is guaranteed: for
    t past the universal threshold or when the core is large enough.
    """
    if t < 0:
        raise DomainError(f"foliation parameter must be non-negative, got {t}")
    if t > MAX_COSH_PARAMETER:
        raise DomainError(f"foliation parameter {t} exceeds {MAX_COSH_PARAMETER:g}; "
                          f"cosh^2 overflows the double range")

    S = model.ends.total_area
    volume = model.tg_core_volume + S * cosh_square_integral(t)
    if volume == 0.0:
        raise DomainError("the equidistant region has zero volume at t = 0 with an empty core")

    ratio = S * math.cosh(t) ** 2 / volume

    # 2 - ratio has the sign of 2|Omega_TG| + S (t - (1 + e^(-2t)) / 2)
    deficit = 2.0 * model.tg_core_volume + S * (t - 0.5 * (1.0 + math.exp(-2.0 * t)))
    if (t > RATIO_THRESHOLD or ratio_bounded_everywhere(model)) and not deficit > 0.0:
        raise VerificationError(f"equidistant ratio {ratio!r} is not below 2 at t = {t}")
    return ratio


def ratio_minimizer(model):
    """
    The t where the equidistant ratio is smallest.

    The ratio's derivative has the sign of tanh t (t + 2 |Omega_TG| / S) - 1,
    so the ratio decreases before this root and increases after it. With an
    empty core the root is alpha.
    """
    c = 2.0 * model.tg_core_volume / model.ends.total_area
    alpha = fuchsian_alpha()
    # The root lies in (0, alpha]
    return brentq(lambda t: math.tanh(t) * (t + c) - 1.0, 0.0, 2.0 * alpha,
                  xtol=1e-15, rtol=4.0 * np.finfo(float).eps, maxiter=200)


def equidistant_ratio_curve(model, ts):
    """
    Ratios along a foliation, checking the approach to 2.

    Past the minimizer the ratios must increase; the largest t must come
    closer to 2 than the smallest tail value.
    """
    ts = np.sort(np.asarray(ts, dtype=float))
    ratios = np.array([equidistant_ratio(model, t) for t in ts])

    tail = ratios[ts >= ratio_minimizer(model)]
    if tail.size > 1:
        if np.any(np.diff(tail) < -1e-15 * tail[1:]):
            raise VerificationError("equidistant ratios do not increase toward 2 in the tail")
        if abs(2.0 - tail[-1]) > abs(2.0 - tail[0]):
            raise VerificationError("equidistant ratios do not approach 2 in the tail")
    return ts, ratios


# Slab profile of the Fuchsian manifold

def _half_square_integral(warp, r):
    if warp.square_integral is not None:
        return float(warp.square_integral(r))
    return integrate(lambda t: float(warp.eval(t)) ** 2, 0.0, r)


def _invert_half_square_integral(warp, target):
    if warp.family is WarpFamily.COSH:
        return solve_cosh_square_integral(target)

    hi = 1.0
    while _half_square_integral(warp, hi) < target:
        hi *= 2.0
        if hi > 1e3:
            raise DomainError(f"volume {target} is out of reach of warp {warp.name}")
    return brentq(lambda r: _half_square_integral(warp, r) - target, 0.0, hi, xtol=1e-15)


def foliation_profile_beta(m, V):
    """
    beta(V) for the foliation by symmetric slabs.

    Returns (A, r, slope): the boundary area of the slab [-r, r] of volume
    V, its half-width, and d beta / dV = 2 f'(r)/f(r).
    """
    if not V > 0:
        raise DomainError(f"volume must be positive, got {V}")
    if not m.warp.even:
        raise DomainError(f"the slab foliation needs an even warp, {m.warp.name} is not even")

    r = _invert_half_square_integral(m.warp, V / (2.0 * m.base.area))
    f = float(m.warp.eval(r))
    area = 2.0 * m.base.area * f * f
    slope = 2.0 * float(m.warp.deriv1(r)) / f
    return area, r, slope


def cheeger_slab_volume(m):
    """Volume of the slab [-alpha, alpha] of the Fuchsian manifold"""
    return 2.0 * m.base.area * cosh_square_integral(fuchsian_alpha())


def fuchsian_isoperimetric_profile(m, V):
    """
    The isoperimetric profile of the Fuchsian manifold, equal to beta(V)
    once V reaches the volume of the Cheeger slab.
    """
    if m.warp.family is not WarpFamily.COSH:
        raise DomainError(f"the slab profile is isoperimetric for the cosh warp only, got {m.warp.name}")
    threshold = cheeger_slab_volume(m)
    if V < threshold:
        raise DomainError(f"slabs are certified isoperimetric only for V >= {threshold:.12g}, got {V}")
    return foliation_profile_beta(m, V)[0]


# Comparison with external profiles

@dataclass
class ProfileComparison:
    """Outcome of checking A <= I_TG(V + |Omega_0| - |Omega_TG|) at every sample"""
    shift: float
    violations: List[Tuple[float, float, float]] = field(default_factory=list)
    equalities: List[float] = field(default_factory=list)
    rigidity_conflict: bool = False

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        return {
            "shift": self.shift,
            "passed": self.passed,
            "violations": [{"V": v, "A": a, "bound": b} for v, a, b in self.violations],
            "equalities": list(self.equalities),
            "rigidity_conflict": self.rigidity_conflict,
        }


def compare_profiles(external, model):
    """
    Compare an outermost profile with the shifted model profile.

    Equality at any volume forces |Omega_0| = |Omega_TG|; an equality point
    with a positive shift is reported as a rigidity conflict.
    """
    if not isinstance(external, ProfileCurve):
        external = ProfileCurve(tuple(external))

    shift = model.excess
    report = ProfileComparison(shift=shift)
    for V, A in external.samples:
        bound = tg_profile(model, V + shift)
        if abs(A - bound) <= EQUALITY_RTOL * bound:
            report.equalities.append(V)
        elif A > bound:
            report.violations.append((V, A, bound))

    report.rigidity_conflict = bool(report.equalities) and shift != 0.0
    if report.violations:
        logger.info("%d profile samples exceed the model bound", len(report.violations))
    return report


@dataclass(frozen=True)
class RenormalizedVolume:
    """Renormalized volume estimate with its tail diagnostics"""
    value: float
    tail_start: float
    tail_points: int
    tail_slope: float
    mean_gap: float

    def to_dict(self):
        return {
            "value": self.value,
            "tail_start": self.tail_start,
            "tail_points": self.tail_points,
            "tail_slope": self.tail_slope,
            "mean_gap": self.mean_gap,
            "slope_tolerance": TAIL_SLOPE_TOL,
        }


def renvol_estimate(external, model):
    """
    |Omega_0| + (1/2) lim (I_TG(V) - I_M(V)), read off the last decade of samples.

    The gap is fitted by a line over the tail; a slope above 1e-6 per unit
    volume means the profile has not been sampled far enough.
    """
    volumes, areas = external.volumes, external.areas
    v_max = volumes[-1]
    tail = volumes >= v_max / TAIL_DECADE
    if np.count_nonzero(tail) < 2:
        raise InsufficientRangeError("insufficient profile range: fewer than two samples in the tail")

    gaps = np.array([tg_profile(model, v) for v in volumes[tail]]) - areas[tail]
    slope = float(np.polyfit(volumes[tail], gaps, 1)[0])
    if abs(slope) >= TAIL_SLOPE_TOL:
        raise InsufficientRangeError(
            f"insufficient profile range: gap slope {slope:.3g} over V >= {v_max / TAIL_DECADE:.6g} "
            f"exceeds {TAIL_SLOPE_TOL:g}"
        )

    mean_gap = float(np.mean(gaps))
    return RenormalizedVolume(
        value=model.outermost_volume + 0.5 * mean_gap,
        tail_start=float(volumes[tail][0]),
        tail_points=int(np.count_nonzero(tail)),
        tail_slope=slope,
        mean_gap=mean_gap,
    )
