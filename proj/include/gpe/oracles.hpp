#pragma once

#include <array>
#include <functional>

#include "gpe/grid.hpp"
#include "gpe/model.hpp"

namespace gpe::oracles {

/// Exact harmonic-trap ground state of the linear model (beta = 0):
/// gaussian profile with E = mu = (1 [+ gamma_y [+ gamma_z]]) / 2.
struct LinearGroundState {
    double energy = 0.0;
    double mu = 0.0;
    std::function<double(const std::array<double, 3>&)> profile;
};
LinearGroundState linear_ground_state(int dim, const TrapParams& trap);

/// Strong-interaction closed forms: chemical potential, energy and support
/// radii of the inverted-parabola profile. Requires beta > 0.
struct TfEstimates {
    double mu = 0.0;
    double energy = 0.0;
    std::array<double, 3> radii{0.0, 0.0, 0.0};
};
TfEstimates tf_estimates(double beta, const TrapParams& trap, int dim);

/// Weak-interaction corrections E ~ E0 + beta*C/2, mu ~ mu0 + beta*C with
/// C = int |phi0|^4 evaluated by quadrature (not a hard-coded constant).
struct WeakInteractionEstimates {
    double energy = 0.0;
    double mu = 0.0;
    double quartic_integral = 0.0;
};
WeakInteractionEstimates weak_interaction_estimates(double beta, const TrapParams& trap, int dim);

/// Focusing 1D soliton A/sqrt(-beta) sech(A(x - v t - x0)) e^{i(v x - (v^2-A^2)t/2 + theta0)}.
cdouble bright_soliton(double x, double t, double amplitude, double velocity, double x0,
                       double theta0, double beta);
double bright_soliton_mass(double amplitude, double beta);
double bright_soliton_energy(double amplitude, double velocity, double beta);

/// Plane-wave frequency omega = |k|^2/2 + beta |A|^2.
double dispersion_omega(const std::array<double, 3>& k, int dim, double amplitude, double beta);

/// Closed-form width evolution delta(t) = E0 + (delta0 - E0) cos(2t) + delta1 sin(2t)
/// (1D free-interaction and 2D radial cases share the formula; period pi).
double width_closed_form(double t, double e0, double delta0, double delta1);

/// Harmonic center-of-mass motion per axis: x(t) and xdot(t) for
/// xdotdot + Lambda x = 0 with x(0) = x0, xdot(0) = w0.
struct ComState {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    std::array<double, 3> v{0.0, 0.0, 0.0};
};
ComState center_of_mass_trajectory(double t, const std::array<double, 3>& x0,
                                   const std::array<double, 3>& w0,
                                   const std::array<double, 3>& lambda, int dim);

/// Exact transported solution built from a stationary profile phi_e with
/// eigenvalue mu_e: phi_e(x - x_c(t)) e^{-i mu_e t} e^{i(w(t).x + g(t))}.
struct TransportedSolutionSpec {
    std::function<cdouble(const std::array<double, 3>&)> phi_e;
    double mu_e = 0.0;
    std::array<double, 3> x0{0.0, 0.0, 0.0};
    std::array<double, 3> w0{0.0, 0.0, 0.0};
    double g0 = 0.0;
    std::array<double, 3> lambda{1.0, 1.0, 1.0}; // diag entries 1, gamma_y^2, gamma_z^2
    int dim = 1;
};

/// Phase accumulator g(t) = g0 + int_0^t [V(x_c) - |xdot_c|^2/2] ds by
/// adaptive Gauss-Legendre to 1e-12 (the action integrand makes the
/// pointwise residual of the equation vanish).
double transported_phase(const TransportedSolutionSpec& spec, double t);

cdouble transported_solution(const std::array<double, 3>& x, double t,
                             const TransportedSolutionSpec& spec);

/// Adaptive composite Gauss-Legendre quadrature (absolute tolerance).
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    double tol = 1e-12);

} // namespace gpe::oracles
