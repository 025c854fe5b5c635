#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
warpiso - Cheeger constants, bottom spectra, curvature invariants and isoperimetric
profiles of warped-product 3-manifolds.

This is the main entry point for the command line.
"""

import sys
import os
from PySide6.QtCore import QCoreApplication

# Add the src directory to the path so we can import our modules
sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

from src.cli.command_line import main as run_command_line

def main(argv=None):
    """Main application entry point"""
    # Settings are stored under this organization and application name
    QCoreApplication.setApplicationName("warpiso")
    QCoreApplication.setOrganizationName("warpiso")

    return run_command_line(argv)

if __name__ == "__main__":
    sys.exit(main())
