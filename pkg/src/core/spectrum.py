#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Bottom of the spectrum for warpiso.
Finite-volume discretization of -(f^2 u')' = lambda f^2 u on a truncated radial window,
Rayleigh quotients of trial functions, and the algebraic helpers that go with them.
"""

import logging
from dataclasses import asdict, dataclass
from enum import Enum

import numpy as np
from scipy.linalg import eigh_tridiagonal, solve_banded

from src.core.errors import DomainError, EigensolverError
from src.core.numerics import integrate
from src.core.radial_calculus import radial_sech

logger = logging.getLogger(__name__)

MIN_GRID = 100
MAX_HALF_WIDTH = 300.0
RESIDUAL_TOL = 1e-8
MAX_REFINEMENTS = 8
ADMISSIBLE_TOL = 1e-12


class BoundaryCondition(Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


@dataclass(frozen=True)
class SpectralResult:
    """Smallest eigenvalue of the truncated radial problem"""
    lambda0: float
    half_width: float
    grid_n: int
    boundary_condition: BoundaryCondition
    rayleigh_of_sech: float
    residual: float
    iterations: int

    def to_dict(self):
        values = asdict(self)
        values["boundary_condition"] = self.boundary_condition.value
        return values


def _assemble(m, L, n, bc):
    """
    Diagonal and off-diagonal of the symmetric form M^(-1/2) K M^(-1/2).

    K is the stiffness matrix with face weights f^2 at cell midpoints, M the
    lumped mass with node weights f^2. Dirichlet keeps the n - 1 interior
    nodes, Neumann all n + 1 nodes with half cells at the ends.
    """
    h = 2.0 * L / n
    nodes = np.linspace(-L, L, n + 1)
    faces = np.asarray(m.warp.eval(0.5 * (nodes[:-1] + nodes[1:])), dtype=float) ** 2
    mass = np.asarray(m.warp.eval(nodes), dtype=float) ** 2 * h

    if bc is BoundaryCondition.DIRICHLET:
        mass = mass[1:-1]
        stiffness_diag = (faces[:-1] + faces[1:]) / h
        coupling = faces[1:-1] / h
    else:
        mass[0] *= 0.5
        mass[-1] *= 0.5
        stiffness_diag = np.empty(n + 1)
        stiffness_diag[0] = faces[0] / h
        stiffness_diag[-1] = faces[-1] / h
        stiffness_diag[1:-1] = (faces[:-1] + faces[1:]) / h
        coupling = faces / h

    diag = stiffness_diag / mass
    root_mass = np.sqrt(mass)
    off = -coupling / root_mass[:-1] / root_mass[1:]
    return diag, off


def _apply(diag, off, v):
    out = diag * v
    out[:-1] += off * v[1:]
    out[1:] += off * v[:-1]
    return out


def _residual(diag, off, lam, v):
    return float(np.max(np.abs(_apply(diag, off, v) - lam * v)) / np.max(np.abs(v)))


def _inverse_iteration(diag, off, lam, v):
    """Refine an eigenpair by shifted inverse iteration until the residual target is met"""
    banded = np.zeros((3, diag.size))
    banded[0, 1:] = off
    banded[2, :-1] = off
    residual = _residual(diag, off, lam, v)

    iterations = 0
    while residual >= RESIDUAL_TOL * max(1.0, abs(lam)) and iterations < MAX_REFINEMENTS:
        iterations += 1
        shift = lam - 1e-9 * max(1.0, abs(lam))
        banded[1] = diag - shift
        v = solve_banded((1, 1), banded, v)
        v = v / np.linalg.norm(v)
        lam = float(v @ _apply(diag, off, v))
        residual = _residual(diag, off, lam, v)
        logger.debug("Inverse iteration %d: lambda %.15g, residual %.3g", iterations, lam, residual)

    if residual >= RESIDUAL_TOL * max(1.0, abs(lam)):
        raise EigensolverError(iterations, residual)
    return lam, v, residual, iterations


def lambda0_truncated(m, L, n, bc=BoundaryCondition.DIRICHLET):
    """
    Smallest eigenvalue of the radial problem on [-L, L] with n grid intervals.

    The symmetric tridiagonal form is solved by Sturm-sequence bisection for
    the lowest eigenvalue only; the eigenvector residual is checked and,
    if needed, refined by inverse iteration.
    """
    bc = BoundaryCondition(bc)
    if not L > 0:
        raise DomainError(f"half-width must be positive, got {L}")
    if L > MAX_HALF_WIDTH:
        raise DomainError(f"half-width {L} exceeds {MAX_HALF_WIDTH:g}; f^2 overflows the weight range")
    if n < MIN_GRID:
        raise DomainError(f"grid must have at least {MIN_GRID} intervals, got {n}")

    diag, off = _assemble(m, L, n, bc)
    values, vectors = eigh_tridiagonal(diag, off, select="i", select_range=(0, 0), lapack_driver="stebz")
    lam, vector = float(values[0]), vectors[:, 0]
    lam, vector, residual, iterations = _inverse_iteration(diag, off, lam, vector)

    # The Neumann bottom is zero up to round-off
    lam = max(lam, 0.0)
    logger.debug("lambda0(L=%g, n=%d, %s) = %.15g", L, n, bc.value, lam)

    return SpectralResult(
        lambda0=lam,
        half_width=float(L),
        grid_n=int(n),
        boundary_condition=bc,
        rayleigh_of_sech=rayleigh_quotient(m, radial_sech, L),
        residual=residual,
        iterations=iterations,
    )


def rayleigh_quotient(m, u, L):
    """Integral of f^2 u'^2 over integral of f^2 u^2 on [-L, L]"""
    if not L > 0:
        raise DomainError(f"half-width must be positive, got {L}")

    weight = lambda r: float(m.warp.eval(r)) ** 2
    numerator = integrate(lambda r: weight(r) * float(u.deriv1(r)) ** 2, -L, L)
    denominator = integrate(lambda r: weight(r) * float(u.eval(r)) ** 2, -L, L)
    if denominator == 0.0:
        raise DomainError(f"trial function {u.name} vanishes identically on [-{L}, {L}]")
    return numerator / denominator


def is_admissible(u, L, tol=ADMISSIBLE_TOL):
    """Whether u satisfies the Dirichlet condition at both ends of [-L, L]"""
    scale = max(1.0, float(np.max(np.abs(u.eval(np.linspace(-L, L, 201))))))
    return abs(float(u.eval(-L))) <= tol * scale and abs(float(u.eval(L))) <= tol * scale


def extrapolate_lambda0(m, half_widths, n):
    """
    Fit lambda(L) = lambda_inf + c / L^2 to Dirichlet truncations.

    Returns (lambda_inf, c). The grid spacing is held fixed across widths so
    the discretization error is the same at every L.
    """
    half_widths = sorted(float(L) for L in half_widths)
    if len(half_widths) < 2:
        raise DomainError("extrapolation needs at least two half-widths")

    spacing = 2.0 * half_widths[-1] / n
    values = [lambda0_truncated(m, L, max(MIN_GRID, int(round(2.0 * L / spacing)))).lambda0
              for L in half_widths]
    design = np.column_stack([np.ones(len(half_widths)), 1.0 / np.square(half_widths)])
    (limit, slope), *_ = np.linalg.lstsq(design, np.asarray(values), rcond=None)
    return float(limit), float(slope)


def cheeger_inequality_holds(h, lambda0):
    """The classical Cheeger inequality h^2 / 4 <= lambda0"""
    return h * h / 4.0 <= lambda0


def sullivan_lambda0(D):
    """lambda0 = D (2 - D) for a limit-set dimension D in [1, 2]"""
    if not 1.0 <= D <= 2.0:
        raise DomainError(f"the dimension formula lambda0 = D(2 - D) is stated for 1 <= D <= 2, got {D}")
    return D * (2.0 - D)
