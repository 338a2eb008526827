"""Decay constants and sample-based certification of the decay estimate."""

from .checks import (
    DEFAULT_TOLERANCE,
    BoundCheck,
    CertificateReport,
    Verdict,
    certify,
    certify_amplitude,
    certify_decay,
    certify_lyapunov,
)
from .constants import (
    CAP_RATIO,
    DEFAULT_KAPPA,
    OPTIMAL_DAMPING,
    DecayConstants,
    amplitude_bound,
    choose_epsilon,
    decay_rate,
    decay_rate_slope,
    derive_constants,
    energy_bound,
    log_amplitude_bound,
    mu0,
    mu_max,
    mu_max_cap,
    overshoot_M,
    overshoot_slope,
)

__all__ = (
    'CAP_RATIO',
    'DEFAULT_KAPPA',
    'DEFAULT_TOLERANCE',
    'OPTIMAL_DAMPING',
    'BoundCheck',
    'CertificateReport',
    'DecayConstants',
    'Verdict',
    'amplitude_bound',
    'certify',
    'certify_amplitude',
    'certify_decay',
    'certify_lyapunov',
    'choose_epsilon',
    'decay_rate',
    'decay_rate_slope',
    'derive_constants',
    'energy_bound',
    'log_amplitude_bound',
    'mu0',
    'mu_max',
    'mu_max_cap',
    'overshoot_M',
    'overshoot_slope',
)
