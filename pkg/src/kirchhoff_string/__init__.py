"""Simulation and decay certification of the damped Kirchhoff string.

The `kirchhoff_string` package integrates the nonlinear, damped
Kirchhoff string with fixed ends and checks numerically that its
energy obeys the uniform exponential decay estimate.

Key features:
- a sine-modal Galerkin solver (fixed-step RK4 or adaptive Dormand-Prince);
- an independent finite-difference oracle for cross-validation;
- energy and Lyapunov monitors with functional-inequality margins;
- closed-form decay constants and certificate checks;
- a YAML-driven command-line harness writing CSV time series and sweeps.
"""
