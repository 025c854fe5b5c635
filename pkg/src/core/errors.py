#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Exception hierarchy for warpiso.
Every error carries the exit code the command line maps it to.
"""


class WarpisoError(Exception):
    """Base class for all toolkit errors"""
    exit_code = 1


class DomainError(WarpisoError, ValueError):
    """An input lies outside the domain of an operation"""
    exit_code = 1


class NonCertifiableError(DomainError):
    """The calibration supremum is attained on the edge of the radial window"""


class ProfileValidationError(DomainError):
    """A profile curve is malformed or not monotone"""


class ConvergenceError(WarpisoError, ArithmeticError):
    """A numerical procedure did not reach its target accuracy"""
    exit_code = 2


class QuadratureError(ConvergenceError):
    """Adaptive quadrature failed on an interval"""

    def __init__(self, interval, achieved, message=""):
        self.interval = tuple(interval)
        self.achieved = achieved
        text = (f"quadrature did not converge on [{interval[0]:.6g}, {interval[1]:.6g}] "
                f"(achieved absolute error {achieved:.3g})")
        if message:
            text = f"{text}: {message}"
        super().__init__(text)


class BracketError(ConvergenceError):
    """No sign change was found while scanning for a root"""

    def __init__(self, window, message="no sign change"):
        self.window = tuple(window)
        super().__init__(f"{message} while scanning [{window[0]:.6g}, {window[1]:.6g}]")


class EigensolverError(ConvergenceError):
    """The tridiagonal eigensolver did not converge"""

    def __init__(self, iterations, residual):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"eigensolver did not converge after {iterations} refinement iterations "
            f"(relative residual {residual:.3g})"
        )


class InsufficientRangeError(ConvergenceError):
    """The profile gap has not stabilized over the sampled volumes"""


class VerificationError(WarpisoError, AssertionError):
    """An identity, certificate or invariant check failed"""
    exit_code = 3
