#include "gpe/model.hpp"

#include <cmath>
#include <numbers>

namespace gpe {

namespace {
constexpr double kPi = std::numbers::pi;
}

void DipoleParams::validate(int dim) const {
    double n2 = axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2];
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
        throw InvalidInput("dipole: axis must be a unit vector");
    if (mode == DipoleKernel::ThreeD && dim != 3)
        throw InvalidInput("dipole: 3D kernel requires dim = 3");
    if (mode == DipoleKernel::TwoD_SDM && dim != 2)
        throw InvalidInput("dipole: 2D SDM kernel requires dim = 2");
}

double DipoleParams::contact_beta(double kappa, const TrapParams& trap, int dim) const {
    switch (dim) {
        case 3:
            return kappa - lambda;
        case 2: {
            double n3 = axis[2];
            return (kappa + lambda * (3.0 * n3 * n3 - 1.0)) * std::sqrt(trap.gamma_z / (2.0 * kPi));
        }
        default:
            throw InvalidInput("dipole: 1D couplings are unsupported");
    }
}

double DipoleParams::eta(int dim) const {
    switch (dim) {
        case 3:
            return -3.0 * lambda;
        case 2:
            return -1.5 * lambda;
        default:
            throw InvalidInput("dipole: 1D couplings are unsupported");
    }
}

double harmonic_potential(const std::array<double, 3>& x, const TrapParams& trap, int dim) {
    switch (dim) {
        case 1:
            return 0.5 * x[0] * x[0];
        case 2:
            return 0.5 * (x[0] * x[0] + trap.gamma_y * trap.gamma_y * x[1] * x[1]);
        case 3:
            return 0.5 * (x[0] * x[0] + trap.gamma_y * trap.gamma_y * x[1] * x[1] +
                          trap.gamma_z * trap.gamma_z * x[2] * x[2]);
        default:
            throw InvalidInput("harmonic_potential: dim must be 1, 2 or 3");
    }
}

double beta_from_kappa(double kappa, const TrapParams& trap, int dim) {
    switch (dim) {
        case 3:
            return kappa;
        case 2:
            return kappa * std::sqrt(trap.gamma_z / (2.0 * kPi));
        case 1:
            return kappa * std::sqrt(trap.gamma_y * trap.gamma_z) / (2.0 * kPi);
        default:
            throw InvalidInput("beta_from_kappa: dim must be 1, 2 or 3");
    }
}

std::array<std::array<double, 3>, 3> rotation_matrix(double t, double omega, int dim) {
    if (dim != 2 && dim != 3)
        throw InvalidInput("rotation_matrix: rotating frame needs dim 2 or 3");
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    std::array<std::array<double, 3>, 3> a{{{c, s, 0.0}, {-s, c, 0.0}, {0.0, 0.0, 1.0}}};
    return a;
}

std::array<double, 3> apply_rotation(const std::array<std::array<double, 3>, 3>& mat,
                                     const std::array<double, 3>& x, int dim) {
    std::array<double, 3> y{0.0, 0.0, 0.0};
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) y[std::size_t(i)] += mat[std::size_t(i)][std::size_t(j)] * x[std::size_t(j)];
    return y;
}

double rotating_potential(const std::array<double, 3>& x_tilde, double t, double omega,
                          const TrapParams& trap, int dim) {
    auto a = rotation_matrix(t, omega, dim);
    return harmonic_potential(apply_rotation(a, x_tilde, dim), trap, dim);
}

double dipolar_kernel_hat(const std::array<double, 3>& xi, DipoleKernel mode) {
    double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (r2 == 0.0)
        throw InvalidInput("dipolar_kernel_hat: zero frequency uses the dropped-mode convention");
    return mode == DipoleKernel::ThreeD ? 1.0 / r2 : 1.0 / std::sqrt(r2);
}

std::vector<double> potential_array(const Grid& grid, const TrapParams& trap) {
    std::vector<double> v(grid.node_count());
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i)
        v[i] = harmonic_potential(grid.point(grid.node_coords(i)), trap, grid.dim());
    return v;
}

} // namespace gpe
