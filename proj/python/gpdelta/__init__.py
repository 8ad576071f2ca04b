"""Dark solitons of the defocusing Gross-Pitaevskii equation with a delta defect."""

from ._core import (
    ConvergenceError,
    EigenCountExceeded,
    Grid,
    NumericalError,
    apply_propagator,
    bound_state,
    closed_form_energy,
    eigs_below,
    energy_gamma,
    energy_gamma_extrapolated,
    energy_gradient,
    eval_state,
    evolve,
    g_func,
    gamma_kernel,
    gradient_flow,
    instability_eigenvalue,
    lambda_curve,
    minimize_report,
    minimizer_kind,
    orbit_distance,
    seeded_initial_field,
    spectral_report,
    theta_gamma,
    theta_tilde,
    w_erfc,
)

__all__ = [name for name in dir() if not name.startswith("_")]
