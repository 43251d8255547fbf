"""Certified hyperbolicity for Jensen, Appell and delta-Appell polynomials."""

from .ball import Ball, format_ball, parse_ball_text, parse_constant, parse_number
from .constructions import (
    ExpPolynomial,
    SampleWindow,
    SequenceWindow,
    appell_poly,
    delta_appell_poly,
    gaussian_exp_poly,
    jensen_poly,
    jensen_to_delta_appell,
    laguerre_poly,
)
from .curves import CurveFamily, check_interlacing, check_limits, trace_root_curves
from .errors import (
    AmbiguousDegree,
    BracketFailure,
    BranchJumpDetected,
    DeltaLPError,
    DomainError,
    GridMismatch,
    PrecisionExhausted,
    SignChangeDetected,
    WindowMismatch,
)
from .kernels import BACKEND
from .poly import (
    HyperbolicityReport,
    IntervalPolynomial,
    RootInterval,
    RootIsolation,
    RootSign,
    Status,
    Verdict,
    certify_adaptive,
    certify_hyperbolic,
    isolate_real_roots,
    refine_root,
)
from .specfun import (
    bessel_clifford,
    bessel_clifford_zeros,
    fractional_partition,
    gamma,
    partition_numbers,
    r_alpha,
    reciprocal_gamma_product,
)

__version__ = "0.1.0"
