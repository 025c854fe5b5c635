#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Application settings management for warpiso.
Handles persistent defaults for tolerances, windows and grids, and signals changes.
"""

import logging
import os

from PySide6.QtCore import QObject, QSettings, Signal

from src.core.errors import DomainError

logger = logging.getLogger(__name__)

CONFIG_ENV = "WARPISO_CONFIG"
JOBS_ENV = "WARPISO_JOBS"


class WarpisoSettings(QObject):
    """
    Persistent toolkit defaults with a signal for changes
    """
    # Signals
    setting_changed = Signal(str, object)

    def __init__(self, path=None):
        super().__init__()
        path = path or os.environ.get(CONFIG_ENV)
        if path:
            self.settings = QSettings(str(path), QSettings.IniFormat)
        else:
            self.settings = QSettings(QSettings.IniFormat, QSettings.UserScope, "warpiso", "warpiso")

        # Default settings
        self._default_settings = {
            # Certification
            "tolerance": 1e-8,
            "quadrature_rel_tol": 1e-10,
            "quadrature_abs_tol": 1e-14,
            "identity_tol": 1e-10,

            # Radial window
            "radial_window": 25.0,

            # Spectrum
            "spectrum_half_width": 12.0,
            "spectrum_grid": 8000,

            # Oracle
            "oracle_half_width": 10.0,
            "oracle_grid": 20000,

            # Command line
            "jobs": 1,
            "output_format": "json",
        }

        # Initialize settings with defaults if they don't exist
        for key, value in self._default_settings.items():
            if not self.settings.contains(key):
                self.settings.setValue(key, value)

    # Certification settings
    def get_tolerance(self):
        """Get the certification gap tolerance"""
        return float(self.settings.value("tolerance", 1e-8))

    def get_quadrature_tolerances(self):
        """Get the (relative, absolute) quadrature targets"""
        return (float(self.settings.value("quadrature_rel_tol", 1e-10)),
                float(self.settings.value("quadrature_abs_tol", 1e-14)))

    def get_identity_tolerance(self):
        """Get the tolerance of the analytic identity suite"""
        return float(self.settings.value("identity_tol", 1e-10))

    # Window settings
    def get_radial_window(self):
        """Get the half-width of the working radial window"""
        return float(self.settings.value("radial_window", 25.0))

    # Spectrum settings
    def get_spectrum_half_width(self):
        """Get the default truncation half-width L"""
        return float(self.settings.value("spectrum_half_width", 12.0))

    def get_spectrum_grid(self):
        """Get the default number of grid intervals for the eigensolver"""
        return int(self.settings.value("spectrum_grid", 8000))

    # Oracle settings
    def get_oracle_half_width(self):
        """Get the default half-width of the discrete line"""
        return float(self.settings.value("oracle_half_width", 10.0))

    def get_oracle_grid(self):
        """Get the default number of cells of the discrete line"""
        return int(self.settings.value("oracle_grid", 20000))

    # Command line settings
    def get_jobs(self):
        """Get the worker count, WARPISO_JOBS taking precedence"""
        value = os.environ.get(JOBS_ENV)
        if value:
            try:
                jobs = int(value)
            except ValueError:
                raise DomainError(f"{JOBS_ENV} must be an integer, got {value!r}")
        else:
            jobs = int(self.settings.value("jobs", 1))
        if jobs < 1:
            raise DomainError(f"jobs must be at least 1, got {jobs}")
        return jobs

    def get_output_format(self):
        """Get the default output format"""
        return str(self.settings.value("output_format", "json"))

    # Generic settings methods
    def set_setting(self, key, value):
        """Validate and store a known setting, then emit setting_changed"""
        if key not in self._default_settings:
            raise DomainError(f"unknown setting {key!r}")

        value = self._coerce(key, value)
        self.settings.setValue(key, value)
        self.settings.sync()
        logger.info("Setting %s changed to %r", key, value)
        self.setting_changed.emit(key, value)

    def get_setting(self, key, default=None):
        """Get a setting, cast to the type of its default"""
        if default is None and key in self._default_settings:
            default = self._default_settings[key]
        value = self.settings.value(key, default)
        if key in self._default_settings:
            return type(self._default_settings[key])(value)
        return value

    def as_dict(self):
        """Get all known settings with their effective values"""
        values = {key: self.get_setting(key) for key in self._default_settings}
        values["jobs"] = self.get_jobs()
        return values

    def _coerce(self, key, value):
        """Cast a raw value to the type of the default and check its range"""
        kind = type(self._default_settings[key])
        try:
            value = kind(value)
        except (TypeError, ValueError):
            raise DomainError(f"setting {key!r} expects {kind.__name__}, got {value!r}")

        if key.endswith("tol") or key == "tolerance":
            if not value > 0:
                raise DomainError(f"{key} must be positive")
        elif key.endswith("_grid"):
            if value < 100:
                raise DomainError(f"{key} must be at least 100")
        elif key == "jobs":
            if value < 1:
                raise DomainError("jobs must be at least 1")
        elif key.endswith("half_width") or key == "radial_window":
            if not value > 0:
                raise DomainError(f"{key} must be positive")
        elif key == "output_format":
            if value not in ("json", "csv", "text"):
                raise DomainError("output_format must be json, csv or text")
        return value
