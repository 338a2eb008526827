"""Test suite for the kirchhoff-string package.

This package contains unit and integration tests validating the
modal and finite-difference solvers, energy monitors, decay
certificates, run documents and the command-line harness.
"""
