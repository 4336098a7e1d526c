#pragma once

#include <array>

#include "gpe/grid.hpp"

namespace gpe {

/// Sine-series coefficients of a Dirichlet field, indexed l = 1..m-1 per
/// axis with frequencies mu_l = l*pi/(b-a).
///
/// Transform convention: the forward transform is the plain sum
///   c_l = sum_{j=1}^{m-1} f_j sin(mu_l (x_j - a))
/// and the 2/m factor lives in the inverse,
///   f_j = (2/m) sum_l c_l sin(mu_l (x_j - a)),
/// tensorized per axis in 2D/3D.
class SineCoeffs {
public:
    explicit SineCoeffs(Grid grid);

    const Grid& grid() const { return grid_; }
    std::vector<cdouble>& values() { return values_; }
    const std::vector<cdouble>& values() const { return values_; }

    /// mu_l for coefficient index l = 1..m-1 on the given axis.
    double frequency(int axis, int l) const;

    std::size_t coeff_index(const std::array<int, 3>& l) const; // entries 1..m-1
    std::array<int, 3> coeff_numbers(std::size_t flat) const;

    /// |mu|^2 = sum over axes of mu_{l_a}^2 for a flat coefficient index.
    double mu_squared(std::size_t flat) const;

private:
    Grid grid_;
    std::vector<cdouble> values_;
};

SineCoeffs sine_forward(const ComplexField& field);
ComplexField sine_inverse(const SineCoeffs& coeffs);

/// Weight W with ||f||_h^2 = W * sum_l |c_l|^2 (Parseval for the convention
/// above): W = prod over axes of 2h/m.
double coefficient_weight(const Grid& grid);

/// Spectral partial derivative along one axis; returns values on all nodes.
ComplexField sine_derivative(const ComplexField& field, int axis);

/// Evaluates the sine interpolant at an arbitrary point inside the domain.
cdouble eval_sine_series(const SineCoeffs& coeffs, const std::array<double, 3>& p);

} // namespace gpe
