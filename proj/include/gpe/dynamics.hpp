#pragma once

#include <utility>
#include <vector>

#include "gpe/grid.hpp"
#include "gpe/model.hpp"
#include "gpe/observables.hpp"

namespace gpe {

enum class Scheme { Gpe, GpeRotating, GpeDipolar, CgpeSpinOrbit };

struct EvolveConfig {
    double tau = 1e-3;
    double t_final = 1.0;
    long stride = 1; // observable recording stride, in steps
    Scheme scheme = Scheme::Gpe;
    double mass_abort_tol = 1e-8;        // deviation of mass from its initial value
    // the splitting conserves mass to roundoff even through a collapse, so
    // instability is additionally flagged by the conserved-energy drift
    // (checked at record times; legitimate runs stay below 1e-8)
    double energy_abort_tol = 1e-3;
    std::vector<double> snapshot_times;  // optional field snapshots (nearest step)
    bool zero_potential = false;         // free-space fixture, V = 0
    // invoked at record times with (t, t_final); the CLI prints progress
    // lines to standard error through this
    std::function<void(double, double)> on_progress;

    void validate() const {
        if (!(tau > 0.0)) throw InvalidInput("evolve: tau must be positive");
        if (t_final < 0.0) throw InvalidInput("evolve: final time must be >= 0");
        if (stride < 1) throw InvalidInput("evolve: stride must be >= 1");
    }
};

struct Trajectory {
    std::vector<ObservableRecord> records;
    std::vector<std::pair<double, ComplexField>> snapshots;
    double energy_drift = 0.0; // max_t |E(t) - E(0)| / max(1, |E(0)|)
    double mass_drift = 0.0;   // max_t |N(t) - N(0)|
};

/// One Strang step of the sine-pseudospectral scheme: kinetic half step in
/// sine space, exact pointwise phase step, kinetic half step. Conserves the
/// discrete mass to roundoff. potential_override replaces the sampled trap
/// (free-space fixtures pass zeros).
ComplexField tssp_step(const ComplexField& psi, const ModelParams& params, double tau,
                       const std::vector<double>* potential_override = nullptr);

/// Rotating-frame step in rotating Lagrangian coordinates: same composition
/// with the transported trap evaluated at the interval midpoint. For
/// gamma_y = 1 the potential is time independent and this is exactly the
/// tssp_step code path.
ComplexField tssp_step_rotating(const ComplexField& phi, const ModelParams& params, double t_n,
                                double tau);

/// Maps a rotating-Lagrangian field back to the Eulerian frame at time t by
/// spectral interpolation at the rotated nodes (zero outside the domain).
ComplexField map_rotating_to_eulerian(const ComplexField& phi, const ModelParams& params,
                                      double t);

/// Time loop around the steppers; records observables every `stride` steps,
/// starting at t = 0. Aborts (BlowUp) on non-finite values or when the mass
/// deviates by more than mass_abort_tol from its initial value.
Trajectory evolve(const ComplexField& psi0, const ModelParams& params,
                  const EvolveConfig& config);

} // namespace gpe
