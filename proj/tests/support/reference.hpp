#pragma once

// Independent reference implementations used as test oracles. Everything in
// here is deliberately slow and direct so it shares no code path with the
// library it checks.

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "gpe/grid.hpp"
#include "gpe/spectral.hpp"

namespace ref {

using gpe::cdouble;

/// Direct O(m^2) sine transform of one line:
/// out_l = sum_{j=1}^{m-1} in_j sin(pi j l / m).
std::vector<cdouble> dst_direct(const std::vector<cdouble>& in, int m);

/// Direct synthesis f_j = (2/m) sum_l c_l sin(pi j l / m), j = 1..m-1.
std::vector<cdouble> dst_synthesis_direct(const std::vector<cdouble>& coeffs, int m);

/// Direct DFT: X_k = sum_j x_j e^{-2 pi i j k / n}.
std::vector<cdouble> dft_direct(const std::vector<cdouble>& in);

/// Full-grid forward sine transform by direct summation (any dim).
gpe::SineCoeffs sine_forward_direct(const gpe::ComplexField& field);

/// Adaptive composite Gauss-Legendre quadrature on [a,b], abs tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);

/// max_i |a_i - b_i| over two equally sized complex arrays.
double max_abs_diff(const std::vector<cdouble>& a, const std::vector<cdouble>& b);

double max_abs_diff_fields(const gpe::ComplexField& a, const gpe::ComplexField& b);

/// Deterministic pseudo-random complex field (interior filled, boundary zero).
gpe::ComplexField random_field(const gpe::Grid& grid, unsigned seed);

} // namespace ref
