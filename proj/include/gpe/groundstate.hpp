#pragma once

#include <optional>

#include "gpe/grid.hpp"
#include "gpe/model.hpp"
#include "gpe/observables.hpp"

namespace gpe {

/// Linear-solve backend for the semi-implicit gradient-flow step.
/// SineSpectral applies the Laplacian in sine space and solves the
/// backward-Euler system by a stabilized inner iteration; its fixed point is
/// the discrete eigenfunction of the spectral Hamiltonian, which is what the
/// tight closed-form tolerances require, so it is the default.
/// FiniteDifference is the classic scheme: Thomas solve in 1D,
/// factorized per-axis sweeps in 2D/3D (second-order accurate fixed point).
enum class GfdnBackend { SineSpectral, FiniteDifference };

enum class InitialGuess { Auto, Gaussian, ThomasFermi, UserField };

struct GfdnConfig {
    double tau = 0.0;        // <= 0: 0.01 for beta <= 100, 0.001 above
    double stop_tol = 1e-6;  // on max_j |phi^{n+1}_j - phi^n_j| / tau
    long max_iters = 500000;
    GfdnBackend backend = GfdnBackend::SineSpectral;
    InitialGuess guess = InitialGuess::Auto;
    std::optional<ComplexField> user_field;
    // return the best-so-far state instead of throwing when the iteration
    // budget runs out (energy comparisons between partially relaxed
    // candidates; slowly converging rotating flows)
    bool return_on_max_iters = false;

    double resolved_tau(double beta) const {
        if (tau > 0.0) return tau;
        return std::abs(beta) <= 100.0 ? 0.01 : 0.001;
    }
};

struct GroundStateResult {
    ComplexField phi;
    double energy = 0.0;
    double mu = 0.0;
    long iterations = 0;
    double residual = 0.0;        // stopping quantity at exit
    double eigen_residual = 0.0;  // ||mu phi - H phi||_h
    double virial_residual = 0.0; // |2 E_kin - 2 E_pot + d E_int|
};

/// One normalized-gradient-flow step: semi-implicit backward-Euler solve with
/// the nonlinearity frozen at phi^n, then projection back to the unit sphere.
ComplexField gfdn_step(const ComplexField& phi, const ModelParams& params, double tau,
                       GfdnBackend backend = GfdnBackend::SineSpectral);

GroundStateResult solve_ground_state(const ModelParams& params, const Grid& grid,
                                     const GfdnConfig& config);

/// Rotating-frame variant: the angular-momentum term is evaluated spectrally
/// at phi^n and treated explicitly; iterates stay complex.
GroundStateResult solve_ground_state_rotating(const ModelParams& params, const Grid& grid,
                                              const GfdnConfig& config);

struct TfGroundState {
    ComplexField phi;
    double mu = 0.0;
    double energy = 0.0;
};

/// Inverted-parabola profile sampled on the grid (no renormalization), with
/// the closed-form mu and E = mu - E_int.
TfGroundState tf_ground_state(const ModelParams& params, const Grid& grid);

/// Domain-sizing rule: half width max(8, 1.5 * R_TF) along the given axis.
double suggested_half_width(const ModelParams& params, int axis);

/// H phi = -kc Lap phi + V phi + beta |phi|^2 phi (spectral Laplacian),
/// optionally plus a precomputed nonlocal potential. Used for eigenvalue
/// residual diagnostics.
ComplexField apply_hamiltonian(const ComplexField& phi, const ModelParams& params,
                               const std::vector<double>* extra_potential = nullptr);

/// Default initial profile per the solver rules (gaussian for beta <= 10,
/// edge-smoothed inverted parabola above), normalized.
ComplexField default_initial_guess(const ModelParams& params, const Grid& grid);

} // namespace gpe
