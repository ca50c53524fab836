"""Noise calibration for the Sampled Gaussian Mechanism."""

from ._backend import BACKEND
from .calibration import CalibrationResult, calibrate, effective_noise, sigma_lower_bound
from .errors import (
    BracketFailure,
    CalibrationError,
    DomainError,
    InvalidTolerance,
    NoSolution,
    ToleranceNotMet,
)
from .mechanism import (
    ConjectureGap,
    LemmaTwoPoint,
    MechanismConfig,
    PrivacyBudget,
    conjecture_gap,
    delta,
    h,
    lemma2_point,
    psi,
    psi_derivative,
    t_derivative,
    t_function,
    tight_constant,
)
from .special_fn import cdf, log_cdf_neg, phi

__version__ = "0.1.0"
