"""Exact and asymptotic study of f_n = P_n(-1), the peak polynomials at t = -1."""

from .series import EgfSeries, add, mul, reciprocal, derivative, tanh_scaled
from .peaks import (
    DEFAULT_ENUM_BOUND,
    FSequence,
    PeakPolynomial,
    evaluate_gf_at_t,
    evaluate_polynomial,
    f_sequence,
    peak_polynomial_enum,
    peak_polynomial_rec,
    pk_count,
)
from .asymptotics import (
    DEFAULT_PRECISION,
    AsymptoticModel,
    Singularity,
    SignReport,
    first_sign_break,
    model,
    normalized_residual,
    predict,
    residue_at,
    sign_report,
    singularity,
    theta_continued_fraction,
    verify_pole,
)

__version__ = "0.1.0"
