import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.core.numerics import configure_quadrature
from src.core.warp_core import BaseSurface, WarpedProduct, WarpFunction


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Every test gets its own settings file, no worker override and default quadrature targets"""
    path = tmp_path / "warpiso.ini"
    monkeypatch.setenv("WARPISO_CONFIG", str(path))
    monkeypatch.delenv("WARPISO_JOBS", raising=False)
    yield path
    configure_quadrature()


@pytest.fixture
def fuchsian():
    return WarpedProduct.fuchsian(2)


@pytest.fixture
def sphere_product():
    return WarpedProduct(BaseSurface.sphere(), WarpFunction.cosh())
