#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gpe/grid.hpp"
#include "gpe/model.hpp"

namespace gpe {

/// Energy split of the model functional; parts for absent physics are
/// exactly zero and total is their sum as computed.
struct EnergyBreakdown {
    double kinetic = 0.0;
    double potential = 0.0;
    double interaction = 0.0;
    double rotation = 0.0;
    double dipolar = 0.0;
    double josephson = 0.0;
    double total = 0.0;

    void sum_parts() {
        total = kinetic + potential + interaction + rotation + dipolar + josephson;
    }
};

/// Gradient evaluation for the kinetic and angular-momentum terms.
/// Spectral is the default and matches the solver discretization; the
/// centered-difference mode is a second-order cross check.
enum class GradientMethod { Spectral, CenteredFD };

/// N = ||psi||_h^2.
double mass(const ComplexField& psi);

/// Energy of the scalar model. The rotation part is included when
/// params.omega != 0 (dim >= 2); a precomputed dipolar potential
/// (eta * L_n u on the nodes) adds the nonlocal part (1/2) int phi |psi|^2.
/// potential_override replaces the harmonic trap samples (rotating
/// Lagrangian frame with an anisotropic trap).
EnergyBreakdown energy(const ComplexField& psi, const ModelParams& params,
                       GradientMethod method = GradientMethod::Spectral,
                       const std::vector<double>* dipolar_phi = nullptr,
                       const std::vector<double>* potential_override = nullptr);

/// mu = E + E_int for a normalized state.
double chemical_potential(const ComplexField& phi, const ModelParams& params,
                          GradientMethod method = GradientMethod::Spectral,
                          const std::vector<double>* dipolar_phi = nullptr,
                          const std::vector<double>* potential_override = nullptr);

/// Second moments delta_alpha = int alpha^2 |psi|^2 per axis.
std::array<double, 3> widths(const ComplexField& psi);

/// x_c = int x |psi|^2.
std::array<double, 3> center_of_mass(const ComplexField& psi);

/// d/dt of the center of mass at t=0: int Im(conj(psi) grad psi).
std::array<double, 3> center_of_mass_velocity(const ComplexField& psi);

/// Width rate delta^(1) = 2 int alpha Im(conj(psi) d_alpha psi).
double width_rate(const ComplexField& psi, int axis);

/// <L_z> = Re int conj(psi) (-i)(x d_y - y d_x) psi, dim >= 2. The imaginary
/// residual (should vanish) is reported through imag_residual when given.
double angular_momentum(const ComplexField& psi, double* imag_residual = nullptr);

/// Energy of the two-component spin-orbit functional. The josephson bucket
/// collects the detuning, gradient-coupling and Rabi terms.
EnergyBreakdown energy_pair(const ComplexFieldPair& psi, const SpinOrbitParams& so,
                            const ModelParams& params);

double mass_pair(const ComplexFieldPair& psi);
double component_mass(const ComplexField& psi);

/// One row of the observable time series.
struct ObservableRecord {
    double t = 0.0;
    double mass = 0.0;
    EnergyBreakdown energy;
    double mu = 0.0;
    std::array<double, 3> widths{0.0, 0.0, 0.0};
    std::array<double, 3> xc{0.0, 0.0, 0.0};
    double lz = 0.0;
};

} // namespace gpe
