import math

import numpy as np
import pytest

from src.core.curvature import (blowup_ratio, conformal_coordinate, curvature_at, energy_lower_bound_check,
                                gauss_bonnet_energy, gauss_equation_residual, scalar_decay_ratio,
                                slice_shape, stability_integrand)
from src.core.errors import DomainError
from src.core.numerics import fuchsian_alpha
from src.core.warp_core import BaseSurface, WarpedProduct, WarpFunction


def test_fuchsian_metric_is_hyperbolic(fuchsian):
    for r in np.linspace(-10.0, 10.0, 1000):
        report = curvature_at(fuchsian, r)
        assert report.ric_radial == pytest.approx(-2.0, abs=1e-12)
        assert report.ric_tangential == pytest.approx(-2.0, abs=1e-12)
        assert report.scalar == pytest.approx(-6.0, abs=1e-12)


def test_sphere_base_curvature(sphere_product):
    report = curvature_at(sphere_product, 1.0)
    assert report.ric_radial == pytest.approx(-2.0, abs=1e-12)
    assert report.ric_tangential == pytest.approx(-2.0 * math.tanh(1.0) ** 2, abs=1e-12)
    assert report.ric_tangential == pytest.approx(-1.1601, abs=1e-3)
    assert report.scalar + 6.0 == pytest.approx(4.0 / math.cosh(1.0) ** 2, abs=1e-12)

    at_zero = curvature_at(sphere_product, 0.0)
    assert at_zero.ric_tangential == pytest.approx(0.0, abs=1e-15)
    assert at_zero.scalar == pytest.approx(-2.0, abs=1e-15)


def test_scalar_is_trace_of_ricci():
    rng = np.random.default_rng(11)
    for genus, r in zip(rng.integers(2, 8, size=50), rng.uniform(-5.0, 5.0, size=50)):
        m = WarpedProduct.fuchsian(int(genus))
        report = curvature_at(m, r)
        assert report.scalar == pytest.approx(report.ric_radial + 2.0 * report.ric_tangential, abs=1e-12)


def test_flat_torus_base():
    m = WarpedProduct(BaseSurface.flat_torus(), WarpFunction.flat())
    report = curvature_at(m, 3.0)
    assert (report.ric_radial, report.ric_tangential, report.scalar) == (0.0, 0.0, 0.0)


@pytest.mark.parametrize("r", [0.0, 1.0, 2.0, 20.0])
def test_gauss_bonnet_energy_is_constant(r):
    assert gauss_bonnet_energy(WarpedProduct.fuchsian(2), r) == pytest.approx(4.0 * math.pi, rel=1e-9)
    assert gauss_bonnet_energy(WarpedProduct.fuchsian(3), r) == pytest.approx(8.0 * math.pi, rel=1e-9)


def test_gauss_bonnet_energy_needs_hyperbolic_base(sphere_product):
    with pytest.raises(DomainError):
        gauss_bonnet_energy(sphere_product, 1.0)


def test_stability_integrand_on_constants(fuchsian):
    assert stability_integrand(fuchsian, 0.0) == pytest.approx(8.0 * math.pi, rel=1e-12)
    assert stability_integrand(fuchsian, fuchsian_alpha()) == pytest.approx(8.0 * math.pi, rel=1e-9)
    assert stability_integrand(fuchsian, 20.0) == pytest.approx(8.0 * math.pi, rel=1e-12)


def test_energy_lower_bound(fuchsian):
    shape = slice_shape(fuchsian, 1.0)
    area = 4.0 * math.pi * math.cosh(1.0) ** 2
    assert energy_lower_bound_check(shape, area, 2)
    assert not energy_lower_bound_check(slice_shape(fuchsian, 10.0), 1.0, 2)
    with pytest.raises(DomainError):
        energy_lower_bound_check(shape, area, 1)


def test_slice_shape_is_umbilic(fuchsian):
    for r in (0.0, 0.5, 3.0):
        shape = slice_shape(fuchsian, r)
        assert shape.traceless2 == 0.0
        assert shape.normA2 == pytest.approx(2.0 * shape.H ** 2, rel=1e-15)
        assert gauss_equation_residual(shape) == pytest.approx(0.0, abs=1e-12)


def test_conformal_coordinate_range():
    assert conformal_coordinate(0.0) == 0.0
    assert conformal_coordinate(40.0) == pytest.approx(math.pi / 2.0, abs=1e-12)
    assert conformal_coordinate(-40.0) == pytest.approx(-math.pi / 2.0, abs=1e-12)
    values = conformal_coordinate(np.linspace(-5.0, 5.0, 101))
    assert np.all(np.diff(values) > 0)


def test_blowup_ratio_grows(sphere_product):
    ratios = [blowup_ratio(sphere_product, r) for r in (5.0, 10.0, 15.0)]
    assert ratios[0] < ratios[1] < ratios[2]
    assert ratios[1] > 1e3


@pytest.mark.parametrize("r", [6.0, 8.0])
def test_scalar_decay_ratio_tends_to_four(sphere_product, r):
    assert scalar_decay_ratio(sphere_product, r) == pytest.approx(4.0, abs=1e-3)


def test_blowup_needs_sphere_base(fuchsian):
    with pytest.raises(DomainError):
        blowup_ratio(fuchsian, 5.0)
    with pytest.raises(DomainError):
        scalar_decay_ratio(fuchsian, 5.0)


def test_energy_density_without_closed_form():
    m = WarpedProduct(BaseSurface.hyperbolic(2), WarpFunction.exponential())
    assert gauss_bonnet_energy(m, 3.0) == 0.0


def test_energy_density_of_scaled_warp():
    m = WarpedProduct(BaseSurface.hyperbolic(2), WarpFunction.cosh_scaled(2.0))
    expected = 4.0 * math.pi * (math.cosh(1.0) ** 2 - 4.0 * math.sinh(1.0) ** 2)
    assert gauss_bonnet_energy(m, 0.5) == pytest.approx(expected, rel=1e-12)
