import numpy as np
import pytest

from src.core.cheeger_solver import cheeger_lower_bound
from src.core.errors import DomainError
from src.core.numerics import cosh_square_integral, fuchsian_alpha, fuchsian_cheeger_constant
from src.core.oracle import DiscreteLine, discrete_cheeger_intervals, fd_laplacian, fd_operator_check
from src.core.radial_calculus import radial_r_tanh, radial_sech, radial_tanh
from src.core.warp_core import WarpedProduct, WarpFunction


@pytest.fixture(scope="module")
def fine_cut():
    line = DiscreteLine.build(WarpedProduct.fuchsian(2), 10.0, 20000)
    return discrete_cheeger_intervals(line, max_components=2)


def test_fine_search_finds_cheeger_slab(fine_cut):
    alpha = fuchsian_alpha()
    assert fine_cut.quotient == pytest.approx(fuchsian_cheeger_constant(), abs=1e-3)
    (left, right), = fine_cut.intervals
    assert left == pytest.approx(-alpha, abs=1e-2)
    assert right == pytest.approx(alpha, abs=1e-2)


def test_second_component_does_not_help(fine_cut):
    assert len(fine_cut.intervals) == 1
    assert len(fine_cut.faces) == 1
    assert fine_cut.pairs_evaluated > 0
    assert fine_cut.pair_quotient >= fine_cut.quotient - 1e-4


def test_pair_search_tries_disjoint_intervals(fuchsian):
    line = DiscreteLine.build(fuchsian, 10.0, 4000)
    single = discrete_cheeger_intervals(line)
    pair = discrete_cheeger_intervals(line, max_components=2)
    assert single.pairs_evaluated == 0
    assert single.pair_quotient is None
    assert pair.pairs_evaluated > 0
    assert pair.pair_quotient >= single.quotient - 1e-4
    assert pair.quotient == single.quotient
    assert pair.faces == single.faces


def test_discrete_quotient_respects_calibration_bound(fine_cut, fuchsian):
    assert fine_cut.quotient >= cheeger_lower_bound(fuchsian) - 1e-2


@pytest.mark.parametrize("n", [2000, 4000, 8000])
def test_endpoints_converge_with_grid(fuchsian, n):
    line = DiscreteLine.build(fuchsian, 10.0, n)
    cut = discrete_cheeger_intervals(line)
    (left, right), = cut.intervals
    assert abs(left + fuchsian_alpha()) <= 2.0 * line.spacing
    assert abs(right - fuchsian_alpha()) <= 2.0 * line.spacing


def test_flat_cylinder_takes_the_whole_window():
    m = WarpedProduct(WarpedProduct.fuchsian(2).base, WarpFunction.flat())
    cut = discrete_cheeger_intervals(DiscreteLine.build(m, 10.0, 1000))
    assert cut.quotient == pytest.approx(0.1, rel=1e-12)
    assert cut.intervals == [(-10.0, 10.0)]
    assert cut.faces == [(0, 1000)]


def test_prefix_volume_approximates_slab_volume(fuchsian):
    line = DiscreteLine.build(fuchsian, 3.0, 2000)
    assert line.prefix_volume[0] == 0.0
    assert line.prefix_volume[-1] == pytest.approx(2.0 * cosh_square_integral(3.0), rel=1e-4)
    assert line.spacing == pytest.approx(0.003)


def test_line_rejects_bad_input(fuchsian):
    with pytest.raises(DomainError):
        DiscreteLine.build(fuchsian, 10.0, 999)
    with pytest.raises(DomainError):
        DiscreteLine.build(fuchsian, 0.0, 1000)
    with pytest.raises(DomainError):
        discrete_cheeger_intervals(DiscreteLine.build(fuchsian, 5.0, 1000), max_components=3)


def test_stencil_reproduces_identities(fuchsian):
    grid = np.linspace(-2.0, 2.0, 41)
    assert fd_operator_check(fuchsian, radial_r_tanh, grid, 1e-4, target=lambda r: np.full_like(r, 2.0)) < 1e-6
    assert fd_operator_check(fuchsian, radial_tanh, grid, 1e-4, target=np.zeros_like) < 1e-6
    assert fd_operator_check(fuchsian, radial_sech, grid, 1e-4) < 1e-6


def test_stencil_error_is_second_order(fuchsian):
    grid = np.linspace(-3.0, 3.0, 61)
    coarse = fd_operator_check(fuchsian, radial_sech, grid, 5e-3)
    fine = fd_operator_check(fuchsian, radial_sech, grid, 5e-4)
    assert coarse / fine > 50.0


def test_stencil_matches_closed_form(fuchsian):
    value = fd_laplacian(fuchsian, radial_sech, np.array([0.5]), 1e-4)
    assert value[0] == pytest.approx(-1.0 / np.cosh(0.5), abs=1e-6)


@pytest.mark.parametrize("h", [1e-7, 1e-2, 0.1])
def test_stencil_step_range(fuchsian, h):
    with pytest.raises(DomainError):
        fd_operator_check(fuchsian, radial_sech, [0.0], h)
