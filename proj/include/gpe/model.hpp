#pragma once

#include <array>
#include <optional>

#include "gpe/grid.hpp"

namespace gpe {

/// Trap frequency ratios, paper convention omega_x <= omega_y <= omega_z.
struct TrapParams {
    double gamma_y = 1.0;
    double gamma_z = 1.0;

    void validate() const {
        if (gamma_y < 1.0 || gamma_z < 1.0)
            throw InvalidInput("trap: gamma_y and gamma_z must be >= 1");
    }
};

enum class DipoleKernel { ThreeD, TwoD_SDM };

/// Dipolar interaction: strength lambda, unit dipole axis n, and the
/// derived unified-model couplings (contact shift and nonlocal coefficient).
struct DipoleParams {
    double lambda = 0.0;
    std::array<double, 3> axis{0.0, 0.0, 1.0};
    DipoleKernel mode = DipoleKernel::ThreeD;

    void validate(int dim) const;
    /// Full contact coupling of the unified model from the 3D couplings:
    /// kappa - lambda in 3D, (kappa + lambda (3 n3^2 - 1)) sqrt(gamma_z / 2 pi)
    /// in 2D with the SDM kernel.
    double contact_beta(double kappa, const TrapParams& trap, int dim) const;
    /// Nonlocal coefficient eta: -3 lambda (3D), -3 lambda / 2 (2D SDM).
    double eta(int dim) const;
};

/// Two-component spin-orbit coupling parameters.
struct SpinOrbitParams {
    double k0 = 0.0;
    double delta = 0.0;
    double rabi = 0.0;
    double beta11 = 0.0;
    double beta12 = 0.0;
    double beta22 = 0.0;

    void validate() const {}
};

/// Dimensionless model of the unified equation family.
struct ModelParams {
    int dim = 1;
    double beta = 0.0;
    TrapParams trap;
    double omega = 0.0;   // rotation speed, 0 if nonrotating
    double epsilon = 1.0; // semiclassical parameter, 1 = standard scaling
    std::optional<DipoleParams> dipole;
    std::optional<SpinOrbitParams> spin_orbit;

    void validate() const {
        if (dim < 1 || dim > 3) throw InvalidInput("model: dim must be 1, 2 or 3");
        if (!(epsilon > 0.0) || epsilon > 1.0)
            throw InvalidInput("model: epsilon must be in (0, 1]");
        trap.validate();
        if (dipole) dipole->validate(dim);
        if (spin_orbit) spin_orbit->validate();
    }

    /// Kinetic coefficient eps^2/2 and phase-time divisor eps of the scaled
    /// equation; both reduce to the standard 1/2 and 1 at eps = 1.
    double kinetic_coeff() const { return 0.5 * epsilon * epsilon; }
    double time_scale() const { return epsilon; }
};

/// V(x) = (x^2 [+ gamma_y^2 y^2 [+ gamma_z^2 z^2]]) / 2.
double harmonic_potential(const std::array<double, 3>& x, const TrapParams& trap, int dim);

/// Unified-equation beta from the 3D coupling kappa:
/// kappa (d=3), kappa*sqrt(gamma_z/2pi) (d=2), kappa*sqrt(gamma_y gamma_z)/2pi (d=1).
double beta_from_kappa(double kappa, const TrapParams& trap, int dim);

/// Frame rotation A(t): 2x2 cos/sin block, extended by the identity row in 3D.
/// A(0) = I, det A = 1.
std::array<std::array<double, 3>, 3> rotation_matrix(double t, double omega, int dim);

std::array<double, 3> apply_rotation(const std::array<std::array<double, 3>, 3>& mat,
                                     const std::array<double, 3>& x, int dim);

/// W(x~, t) = V(A(t) x~); time-independent when gamma_y = 1.
double rotating_potential(const std::array<double, 3>& x_tilde, double t, double omega,
                          const TrapParams& trap, int dim);

/// Fourier symbol of the long-range kernel: 1/|xi|^2 (3D), 1/|xi| (2D SDM).
/// The zero mode is excluded by convention (the caller drops that
/// contribution, fixing u -> 0 at infinity); xi = 0 here is an error.
double dipolar_kernel_hat(const std::array<double, 3>& xi, DipoleKernel mode);

/// Samples V on the grid (all nodes).
std::vector<double> potential_array(const Grid& grid, const TrapParams& trap);

} // namespace gpe
