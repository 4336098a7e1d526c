"""Gross-Pitaevskii solver suite: ground states, splitting dynamics, excitations."""

from ._core import (  # noqa: F401
    BlowUpError,
    EnergyBreakdown,
    Grid,
    InvalidInput,
    ModelParams,
    NonConvergenceError,
    angular_momentum,
    bdg_frequencies,
    center_of_mass,
    chemical_potential,
    dipolar_kernel_hat,
    discrete_norm,
    dispersion_omega,
    energy,
    evolve,
    make_params,
    mass,
    normalize,
    run_experiment_json,
    sample_gaussian,
    solve_ground_state,
    tf_estimates,
    tssp_step,
    widths,
)

__all__ = [name for name in dir() if not name.startswith("_")]
