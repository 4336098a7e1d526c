#pragma once

#include "gpe/grid.hpp"
#include "gpe/model.hpp"

namespace gpe {

/// Nonlocal dipolar potential Phi = eta * L_n (G * |psi|^2) on the grid
/// nodes, ready for the pointwise phase step and the energy term
/// (1/2) int Phi |psi|^2.
///
/// The 3D convolution is evaluated free-space: the kernel is truncated at
/// radius T = min box side and applied on a factor-2 zero-padded Fourier
/// grid, whose symbol (1 - cos(T|xi|))/|xi|^2 is smooth at xi = 0. That
/// reproduces the open-boundary solution to spectral accuracy for densities
/// confined well inside the box. The 2D SDM kernel 1/|xi| is applied
/// directly on the padded grid with the zero mode dropped.
std::vector<double> dipolar_potential(const ComplexField& psi, const DipoleParams& dip);

/// Spec-typed wrapper: same values in a (real-valued) complex field.
ComplexField dipolar_term(const ComplexField& psi, const DipoleParams& dip);

/// Free-space Poisson solve -Lap u = rho with u -> 0 at infinity, on the
/// nodes of a 3D grid (truncated-kernel spectral convolution).
std::vector<double> poisson_free_space(const Grid& grid, const std::vector<double>& rho);

/// Both routes of the interaction decomposition, applied to a node-sampled
/// density on the factor-2 padded Fourier grid with the exact symbols:
/// direct:     lambda * (3 (n.xi)^2/|xi|^2 - 1) * rho_hat
/// decomposed: -lambda * rho + eta * L_n (G * rho), eta = -3 lambda
/// The two agree to roundoff; both use the dropped-zero-mode convention.
std::vector<double> ddi_apply_direct_symbol(const Grid& grid, const std::vector<double>& rho,
                                            const DipoleParams& dip);
std::vector<double> ddi_apply_decomposed(const Grid& grid, const std::vector<double>& rho,
                                         const DipoleParams& dip);

} // namespace gpe
