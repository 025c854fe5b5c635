#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
warpiso - numerical toolkit for warped-product Cheeger constants
"""

import sys
import os

# Make sure we can import from src
sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

# Run the command line
from main import main

if __name__ == "__main__":
    sys.exit(main())
