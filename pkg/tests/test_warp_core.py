import math

import numpy as np
import pytest

from src.core.errors import DomainError
from src.core.numerics import fuchsian_alpha
from src.core.warp_core import (BaseSurface, Slab, WarpedProduct, WarpFunction, check_evenness,
                                check_positive, derivative_order, slab_volume, slice_area,
                                slice_mean_curvature)


def test_slice_area_examples(fuchsian, sphere_product):
    assert slice_area(fuchsian, 0.0) == pytest.approx(4.0 * math.pi, rel=1e-15)
    assert slice_area(fuchsian, 1.0) == pytest.approx(4.0 * math.pi * math.cosh(1.0) ** 2, rel=1e-15)
    assert slice_area(sphere_product, 0.0) == pytest.approx(4.0 * math.pi, rel=1e-15)


def test_slab_volume_examples(fuchsian):
    alpha = fuchsian_alpha()
    expected = 4.0 * math.pi * (alpha + math.sinh(alpha) * math.cosh(alpha))
    assert slab_volume(fuchsian, Slab.symmetric(alpha)) == pytest.approx(expected, rel=1e-10)
    assert expected == pytest.approx(49.40, abs=1e-2)
    assert slab_volume(fuchsian, Slab(0.0, 0.0)) == 0.0
    assert slab_volume(fuchsian, Slab(-1.0, 1.0)) == pytest.approx(35.35, abs=1e-2)


def test_slab_bounds_out_of_order():
    with pytest.raises(DomainError):
        Slab(1.0, 0.0)


def test_slice_mean_curvature(fuchsian):
    alpha = fuchsian_alpha()
    assert slice_mean_curvature(fuchsian, 0.0) == 0.0
    assert slice_mean_curvature(fuchsian, alpha) == pytest.approx(1.0 / alpha, rel=1e-14)
    H = slice_mean_curvature(fuchsian, 25.0)
    assert H == pytest.approx(1.0, abs=1e-15)


def test_volume_derivative_is_slice_area(fuchsian):
    rng = np.random.default_rng(7)
    h = 1e-4
    for x in rng.uniform(0.1, 5.0, size=20):
        upper = slab_volume(fuchsian, Slab(0.0, x + h))
        lower = slab_volume(fuchsian, Slab(0.0, x - h))
        assert (upper - lower) / (2.0 * h) == pytest.approx(slice_area(fuchsian, x), rel=1e-6)


def test_slab_volume_is_additive(fuchsian):
    whole = slab_volume(fuchsian, Slab(-2.0, 3.0))
    parts = slab_volume(fuchsian, Slab(-2.0, 0.5)) + slab_volume(fuchsian, Slab(0.5, 3.0))
    assert parts == pytest.approx(whole, rel=1e-12)


def test_slice_area_is_even(fuchsian):
    r = np.linspace(0.0, 10.0, 101)
    assert np.allclose(slice_area(fuchsian, r), slice_area(fuchsian, -r), rtol=1e-15, atol=0.0)


def test_gauss_bonnet_is_enforced():
    with pytest.raises(DomainError):
        BaseSurface(curvature=-1.0, area=1.0, euler_char=-2)
    with pytest.raises(DomainError):
        BaseSurface.hyperbolic(1)


def test_hyperbolic_base_data():
    base = BaseSurface.hyperbolic(3)
    assert base.area == pytest.approx(8.0 * math.pi)
    assert base.euler_char == -4


def test_evenness_checks():
    grid = np.linspace(0.0, 10.0, 101)
    assert check_evenness(WarpFunction.cosh(), grid) <= 1e-12
    assert check_evenness(WarpFunction.exponential(), grid) > 1.0

    lopsided = WarpFunction.custom(np.exp, np.exp, np.exp, even=True, name="lopsided")
    with pytest.raises(DomainError):
        check_evenness(lopsided, grid)


def test_positivity_check():
    shifted = WarpFunction.custom(lambda r: r, lambda r: np.ones_like(r), lambda r: np.zeros_like(r),
                                  even=False, name="identity")
    with pytest.raises(DomainError):
        check_positive(shifted, -1.0, 1.0)


def test_derivative_order():
    assert derivative_order(WarpFunction.cosh(), [0.0, 0.5, 1.0, 2.0]) >= 1.9
    assert derivative_order(WarpFunction.cosh_scaled(2.0), [0.5, 1.0]) >= 1.9
    assert derivative_order(WarpFunction.flat(), [0.5, 1.0]) == math.inf


def test_cosh_scaled_needs_positive_parameter():
    with pytest.raises(DomainError):
        WarpFunction.cosh_scaled(0.0)


def test_window_must_be_positive():
    with pytest.raises(DomainError):
        WarpedProduct(BaseSurface.hyperbolic(2), WarpFunction.cosh(), window=0.0)
