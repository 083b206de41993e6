"""Gauss hypergeometric function 2F1 for complex arguments, and PTG wave functions."""
from .errors import (
    DivergentNormError,
    DomainError,
    GaussHypError,
    NoConvergenceError,
    PathUnsafeError,
    PoleError,
    VanishingStateError,
)
from .gamma_engine import gamma, gamma_inv, log_gamma
from .hyp2f1 import EvalResult, HypParams, Method, hyp_2f1, hyp_2f1_eval, test_2f1

__all__ = [
    "DivergentNormError",
    "DomainError",
    "EvalResult",
    "GaussHypError",
    "HypParams",
    "Method",
    "NoConvergenceError",
    "PathUnsafeError",
    "PoleError",
    "VanishingStateError",
    "gamma",
    "gamma_inv",
    "hyp_2f1",
    "hyp_2f1_eval",
    "log_gamma",
    "test_2f1",
]
