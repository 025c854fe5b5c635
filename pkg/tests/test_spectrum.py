import math

import numpy as np
import pytest

from src.core.errors import DomainError
from src.core.numerics import fuchsian_alpha, fuchsian_cheeger_constant
from src.core.radial_calculus import radial_constant, radial_sech, truncated_ground_state
from src.core.spectrum import (MAX_HALF_WIDTH, BoundaryCondition, _assemble, cheeger_inequality_holds,
                               extrapolate_lambda0, is_admissible, lambda0_truncated, rayleigh_quotient,
                               sullivan_lambda0)


def dirichlet_exact(L):
    return 1.0 + (math.pi / (2.0 * L)) ** 2


@pytest.mark.parametrize("L, n", [(8.0, 4000), (12.0, 8000)])
def test_dirichlet_bottom_matches_truncation_law(fuchsian, L, n):
    result = lambda0_truncated(fuchsian, L, n)
    assert result.lambda0 == pytest.approx(dirichlet_exact(L), abs=1e-4)
    assert result.lambda0 > 1.0
    assert result.residual < 1e-8
    assert result.boundary_condition is BoundaryCondition.DIRICHLET


def test_window_of_twelve(fuchsian):
    assert lambda0_truncated(fuchsian, 12.0, 8000).lambda0 == pytest.approx(1.0171, abs=1e-4)


def test_dirichlet_bottom_decreases_with_window(fuchsian):
    # Same grid spacing at every width
    values = [lambda0_truncated(fuchsian, L, int(L / 0.003)).lambda0 for L in (6.0, 9.0, 12.0)]
    assert values[0] > values[1] > values[2] >= 1.0


def test_grid_convergence_is_second_order(fuchsian):
    values = [lambda0_truncated(fuchsian, 4.0, n).lambda0 for n in (400, 800, 1600)]
    ratio = abs(values[0] - values[1]) / abs(values[1] - values[2])
    assert 3.5 < ratio < 4.5


def test_neumann_bottom_is_zero(fuchsian):
    result = lambda0_truncated(fuchsian, 6.0, 1200, bc="neumann")
    assert result.boundary_condition is BoundaryCondition.NEUMANN
    assert 0.0 <= result.lambda0 < 1e-8


def test_result_carries_rayleigh_of_sech(fuchsian):
    L = 10.0
    result = lambda0_truncated(fuchsian, L, 2000)
    assert result.rayleigh_of_sech == pytest.approx(1.0 - math.tanh(L) / L, rel=1e-9)
    assert result.to_dict()["boundary_condition"] == "dirichlet"


def test_rayleigh_quotient_of_sech(fuchsian):
    assert rayleigh_quotient(fuchsian, radial_sech, 15.0) == pytest.approx(1.0 - math.tanh(15.0) / 15.0, rel=1e-9)


def test_rayleigh_quotient_of_ground_state(fuchsian):
    L = 8.0
    u = truncated_ground_state(L)
    quotient = rayleigh_quotient(fuchsian, u, L)
    assert quotient == pytest.approx(dirichlet_exact(L), rel=1e-9)
    assert quotient == pytest.approx(lambda0_truncated(fuchsian, L, 4000).lambda0, abs=1e-3)
    assert is_admissible(u, L)
    assert not is_admissible(radial_sech, L)


def test_rayleigh_quotient_of_constants(fuchsian):
    assert rayleigh_quotient(fuchsian, radial_constant(1.0), 5.0) == 0.0
    with pytest.raises(DomainError):
        rayleigh_quotient(fuchsian, radial_constant(0.0), 5.0)


def test_extrapolation_to_infinite_window(fuchsian):
    limit, slope = extrapolate_lambda0(fuchsian, [6.0, 8.0, 12.0], 2400)
    assert limit == pytest.approx(1.0, abs=1e-3)
    assert slope == pytest.approx(math.pi ** 2 / 4.0, abs=5e-2)


def test_extrapolation_needs_two_widths(fuchsian):
    with pytest.raises(DomainError):
        extrapolate_lambda0(fuchsian, [6.0], 1200)


def test_cheeger_inequality(fuchsian):
    h = fuchsian_cheeger_constant()
    assert h * h / 4.0 == pytest.approx(1.0 / fuchsian_alpha() ** 2, rel=1e-15)
    assert h * h / 4.0 == pytest.approx(0.69488, abs=1e-5)
    assert cheeger_inequality_holds(h, lambda0_truncated(fuchsian, 12.0, 4000).lambda0)
    assert not cheeger_inequality_holds(h, 0.5)


def test_limit_set_dimension_formula():
    assert sullivan_lambda0(1.0) == 1.0
    assert sullivan_lambda0(2.0) == 0.0
    assert sullivan_lambda0(1.5) == 0.75
    for D in (0.5, 2.5):
        with pytest.raises(DomainError):
            sullivan_lambda0(D)


@pytest.mark.parametrize("L, n", [(0.0, 1000), (-1.0, 1000), (301.0, 1000), (5.0, 99)])
def test_rejects_bad_truncations(fuchsian, L, n):
    with pytest.raises(DomainError):
        lambda0_truncated(fuchsian, L, n)


@pytest.mark.parametrize("bc", list(BoundaryCondition))
def test_widest_window_keeps_the_coupling_finite(fuchsian, bc):
    diag, off = _assemble(fuchsian, MAX_HALF_WIDTH, 2000, bc)
    assert np.all(np.isfinite(diag))
    assert np.all(np.isfinite(off))
    assert np.all(off < 0.0)


def test_bottom_on_a_wide_window(fuchsian):
    result = lambda0_truncated(fuchsian, 250.0, 4000)
    assert result.lambda0 == pytest.approx(1.0, abs=2e-2)
    assert result.residual < 1e-8
