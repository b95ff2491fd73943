"""Christoffel-weighted least-squares polynomial approximation.

The heavy lifting lives in the compiled extension; this package re-exports
its public names.
"""

from _xls import (  # noqa: F401
    DiffusionModel,
    DiscrepancyReport,
    LsSolution,
    MultiIndexSet,
    PolynomialFamily,
    ProjectionDiscrepancy,
    RankFlag,
    Rational,
    SampleEnsemble,
    TargetFunction,
    TensorBasis,
    build_diffusion,
    build_resistor_network,
    christoffel_weights,
    estimate_error,
    eval_univariate,
    evaluate_expansion,
    f_exponential,
    f_gaussian_bump,
    kernel_diagonal,
    projection_discrepancy,
    r_matrix_bounded,
    r_matrix_unbounded,
    run_cls_bounded,
    run_cls_unbounded,
    run_experiment_csv,
    run_mc,
    sample_equilibrium_ball,
    sample_equilibrium_cube,
    sample_equilibrium_hermite,
    sample_equilibrium_laguerre,
    sample_equilibrium_simplex,
    sample_orthogonality,
    scaled_family_eval,
    stability_factor,
    test_function_fq,
    truncate,
    vandermonde,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
