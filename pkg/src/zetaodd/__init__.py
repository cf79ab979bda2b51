"""Fast Lambert-series evaluation of zeta(2k+1), odd powers of pi, and
logs of small primes, with exact coefficient generation and certified
error bounds."""

from .coefficients import (
    BasisTerm,
    CoefficientTable,
    assemble,
    assemble_detailed,
    coeffs_4km1,
    coeffs_4kp1,
    coeffs_log,
    coeffs_pi,
    format_coefficient,
    negative_q_rewrite,
    parse_coefficient,
)
from .core import (
    BiquadraticSurd,
    ConvergenceError,
    DomainError,
    GaussianRational,
    PrecisionContext,
    QuadraticSurd,
    bernoulli,
    make_context,
    truncate_digits,
)
from .engine import (
    ConstantResult,
    ConvergenceProfile,
    convergence_profile,
    log_prime,
    oracle_zeta,
    pi_power,
    zeta3_first_order,
    zeta_odd,
)
from .identities import (
    Residual,
    check_lemma_p4,
    check_lemma_sech,
    check_multisection,
    check_t1_case1,
    check_t1_case2,
    check_t1_case3,
    check_zeta_free,
)
from .series import (
    QSymbolic,
    SeriesResult,
    lambert_eval,
    lambert_derivative_eval,
    lambert_partial_sum,
    lambert_q_expansion,
    sech_series,
    tail_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BasisTerm",
    "BiquadraticSurd",
    "CoefficientTable",
    "ConstantResult",
    "ConvergenceError",
    "ConvergenceProfile",
    "DomainError",
    "GaussianRational",
    "PrecisionContext",
    "QSymbolic",
    "QuadraticSurd",
    "Residual",
    "SeriesResult",
    "assemble",
    "assemble_detailed",
    "bernoulli",
    "check_lemma_p4",
    "check_lemma_sech",
    "check_multisection",
    "check_t1_case1",
    "check_t1_case2",
    "check_t1_case3",
    "check_zeta_free",
    "coeffs_4km1",
    "coeffs_4kp1",
    "coeffs_log",
    "coeffs_pi",
    "convergence_profile",
    "format_coefficient",
    "lambert_eval",
    "lambert_derivative_eval",
    "lambert_partial_sum",
    "lambert_q_expansion",
    "log_prime",
    "make_context",
    "negative_q_rewrite",
    "oracle_zeta",
    "parse_coefficient",
    "pi_power",
    "sech_series",
    "tail_bound",
    "truncate_digits",
    "zeta3_first_order",
    "zeta_odd",
    "__version__",
]
