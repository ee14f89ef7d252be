"""Real-eigenvalue statistics of products of real Ginibre matrices.

The package computes, in closed form and by reproducible Monte Carlo, the
probability that products of independent n x n standard-normal matrices have
k real eigenvalues, including the exact values p_{2,2} = 1/sqrt(2) for one
factor and pi/4 for two, and the induced fraction (pi - 2)/4 of real
two-qubit state pairs whose mixtures are concurrence-optimal.
"""

__version__ = "0.1.0"

from . import analytic, entanglement, linalg, montecarlo, sampling
from .analytic import (
    QuadratureError,
    QuadratureSpec,
    SeriesResult,
    dp_dbeta,
    en_asymptote,
    hypergeom_pFq,
    mean_f,
    mean_p_theta,
    p2_22_integral,
    p_nn_single,
    p_theta_quadrature,
    p_theta_series,
)
from .entanglement import (
    co_optimal_pair,
    concurrence,
    fraction_cooptimal_pairs,
    fraction_cooptimal_theta,
    r_bilinear,
    schmidt_state,
)
from .linalg import EigenSolveError, Spectrum, count_real, eigenvalues, frobenius_norm, product_chain, svd
from .montecarlo import (
    EigCloud,
    ExpectedRealCurve,
    ExperimentConfig,
    GammaFit,
    RealCountHistogram,
    eigencloud,
    expected_real,
    fit_gamma,
    run_histogram,
    sweep_K,
)
from .sampling import SeedSpec, ThetaPoint, ginibre_real, sample_s3, sample_theta

__all__ = [
    "__version__",
    "analytic", "entanglement", "linalg", "montecarlo", "sampling",
    "QuadratureError", "QuadratureSpec", "SeriesResult",
    "dp_dbeta", "en_asymptote", "hypergeom_pFq", "mean_f", "mean_p_theta",
    "p2_22_integral", "p_nn_single", "p_theta_quadrature", "p_theta_series",
    "co_optimal_pair", "concurrence", "fraction_cooptimal_pairs",
    "fraction_cooptimal_theta", "r_bilinear", "schmidt_state",
    "EigenSolveError", "Spectrum", "count_real", "eigenvalues",
    "frobenius_norm", "product_chain", "svd",
    "EigCloud", "ExpectedRealCurve", "ExperimentConfig", "GammaFit",
    "RealCountHistogram", "eigencloud", "expected_real", "fit_gamma",
    "run_histogram", "sweep_K",
    "SeedSpec", "ThetaPoint", "ginibre_real", "sample_s3", "sample_theta",
]
