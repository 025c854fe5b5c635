import math

import numpy as np
import pytest

from src.core.errors import BracketError, DomainError, QuadratureError
from src.core.numerics import (MAX_COSH_PARAMETER, configure_quadrature, cosh_square_integral, find_root,
                               fuchsian_alpha, fuchsian_cheeger_constant, integrate, quadrature_tolerances,
                               solve_cosh_square_integral)


def test_alpha_solves_alpha_equals_coth_alpha():
    alpha = fuchsian_alpha()
    assert alpha == pytest.approx(1.1996786, abs=1e-7)
    assert abs(1.0 / math.tanh(alpha) - alpha) < 1e-12


def test_fuchsian_cheeger_constant():
    assert fuchsian_cheeger_constant() == pytest.approx(1.66711, abs=5e-6)
    assert fuchsian_cheeger_constant() == 2.0 / fuchsian_alpha()


def test_integrate_polynomial():
    assert integrate(lambda x: x * x, 0.0, 1.0) == pytest.approx(1.0 / 3.0, rel=1e-13)


def test_integrate_empty_interval():
    assert integrate(math.exp, 2.0, 2.0) == 0.0


def test_integrate_reports_interval_on_failure():
    with pytest.raises(QuadratureError) as excinfo:
        integrate(lambda x: math.sin(1000.0 * x), 0.0, 100.0, limit=1)
    assert excinfo.value.interval == (0.0, 100.0)
    assert excinfo.value.exit_code == 2


def test_find_root_brackets_by_doubling():
    assert find_root(lambda x: x * x - 2.0) == pytest.approx(math.sqrt(2.0), abs=1e-13)


def test_find_root_without_sign_change():
    with pytest.raises(BracketError) as excinfo:
        find_root(lambda x: x * x + 1.0, limit=4.0)
    assert excinfo.value.window == (0.25, 4.0)


def test_cosh_square_integral_closed_form():
    assert cosh_square_integral(1.0) == pytest.approx(0.5 * (1.0 + math.sinh(1.0) * math.cosh(1.0)), rel=1e-15)
    values = cosh_square_integral(np.array([0.0, 1.0]))
    assert values.shape == (2,)
    assert values[0] == 0.0


@pytest.mark.parametrize("t", [0.1, 1.0, 5.0, 20.0])
def test_solve_cosh_square_integral_inverts(t):
    assert solve_cosh_square_integral(cosh_square_integral(t)) == pytest.approx(t, rel=1e-10)


def test_solve_cosh_square_integral_at_zero():
    assert solve_cosh_square_integral(0.0) == 0.0
    assert solve_cosh_square_integral(-1.0) == 0.0


def test_solve_cosh_square_integral_stops_before_overflow():
    assert solve_cosh_square_integral(cosh_square_integral(250.0)) == pytest.approx(250.0, rel=1e-12)
    with pytest.raises(DomainError, match="overflows"):
        solve_cosh_square_integral(1e300)
    with pytest.raises(DomainError):
        solve_cosh_square_integral(2.0 * cosh_square_integral(MAX_COSH_PARAMETER))


def test_configured_quadrature_targets_become_defaults():
    assert quadrature_tolerances() == (1e-10, 1e-14)
    configure_quadrature(1e-6, 1e-9)
    assert quadrature_tolerances() == (1e-6, 1e-9)
    with pytest.raises(QuadratureError):
        # One subinterval cannot reach even the looser target
        integrate(lambda x: math.sin(1000.0 * x), 0.0, 100.0, limit=1)
    assert integrate(math.exp, 0.0, 1.0) == pytest.approx(math.e - 1.0, rel=1e-6)


def test_configure_quadrature_rejects_non_positive_targets():
    with pytest.raises(DomainError):
        configure_quadrature(0.0, 1e-14)
    with pytest.raises(DomainError):
        configure_quadrature(1e-10, -1.0)
