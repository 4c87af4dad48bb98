"""Tail-asymmetry measures for bivariate dependence.

The package evaluates, estimates, and tests the log-ratio of the joint
upper-corner probability to the joint lower-corner probability of a bivariate
distribution, indexed by how deep into the corners one looks. It ships a
parametric copula catalogue with exact tail behavior, seeded samplers, two
sample analogues with asymptotic and bootstrap inference, a chi-squared test
over multiple corner depths, related comparison measures, and a Monte-Carlo
harness, all behind one CLI (``tailasym``).
"""

from ._kernels import BACKEND as kernel_backend
from .copulas import CopulaModel, TailSummary, make_model, parse_model_spec
from .errors import (
    DataError,
    DomainError,
    LimitUnknownError,
    NumericalError,
    TailAsymError,
)
from .estimation import (
    IntervalBand,
    TailCounts,
    TestReport,
    alpha_hat,
    alpha_hat_curve,
    alpha_star,
    alpha_star_curve,
    chi2_test,
    ci_band_bonferroni,
    ci_bootstrap,
    ci_pointwise,
    jump_set,
    pseudo_observations,
    sigma_hat,
    tail_counts,
    u_min_rule,
)
from .measures import (
    TailCurve,
    WEIGHTS,
    alpha_curve,
    alpha_matrix,
    alpha_zero_numeric,
    beta,
    rho_k,
    rho_k_curve,
    sigma3,
    sigma3_empirical,
)
from .sampling import (
    PairedSample,
    SeedSpec,
    make_rng,
    sample_clayton_cauchy,
    sample_copula,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CopulaModel",
    "DataError",
    "DomainError",
    "IntervalBand",
    "LimitUnknownError",
    "NumericalError",
    "PairedSample",
    "SeedSpec",
    "TailAsymError",
    "TailCounts",
    "TailCurve",
    "TailSummary",
    "TestReport",
    "WEIGHTS",
    "alpha_curve",
    "alpha_hat",
    "alpha_hat_curve",
    "alpha_matrix",
    "alpha_star",
    "alpha_star_curve",
    "alpha_zero_numeric",
    "beta",
    "chi2_test",
    "ci_band_bonferroni",
    "ci_bootstrap",
    "ci_pointwise",
    "jump_set",
    "kernel_backend",
    "make_model",
    "make_rng",
    "parse_model_spec",
    "pseudo_observations",
    "rho_k",
    "rho_k_curve",
    "sample_clayton_cauchy",
    "sample_copula",
    "sigma3",
    "sigma3_empirical",
    "sigma_hat",
    "tail_counts",
    "u_min_rule",
    "__version__",
]
