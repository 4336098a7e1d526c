#include "support/reference.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace ref {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<cdouble> dst_direct(const std::vector<cdouble>& in, int m) {
    std::vector<cdouble> out(std::size_t(m - 1), cdouble{0.0, 0.0});
    for (int l = 1; l < m; ++l) {
        cdouble acc{0.0, 0.0};
        for (int j = 1; j < m; ++j)
            acc += in[std::size_t(j - 1)] * std::sin(kPi * double(j) * double(l) / double(m));
        out[std::size_t(l - 1)] = acc;
    }
    return out;
}

std::vector<cdouble> dst_synthesis_direct(const std::vector<cdouble>& coeffs, int m) {
    std::vector<cdouble> out(std::size_t(m - 1), cdouble{0.0, 0.0});
    for (int j = 1; j < m; ++j) {
        cdouble acc{0.0, 0.0};
        for (int l = 1; l < m; ++l)
            acc += coeffs[std::size_t(l - 1)] * std::sin(kPi * double(j) * double(l) / double(m));
        out[std::size_t(j - 1)] = (2.0 / double(m)) * acc;
    }
    return out;
}

std::vector<cdouble> dft_direct(const std::vector<cdouble>& in) {
    const std::size_t n = in.size();
    std::vector<cdouble> out(n, cdouble{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        cdouble acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            double ang = -2.0 * kPi * double(j) * double(k) / double(n);
            acc += in[j] * cdouble{std::cos(ang), std::sin(ang)};
        }
        out[k] = acc;
    }
    return out;
}

gpe::SineCoeffs sine_forward_direct(const gpe::ComplexField& field) {
    const gpe::Grid& g = field.grid();
    gpe::SineCoeffs out(g);
    const std::size_t nc = out.values().size();
    for (std::size_t flat = 0; flat < nc; ++flat) {
        auto l = out.coeff_numbers(flat);
        cdouble acc{0.0, 0.0};
        const std::size_t nn = g.node_count();
        for (std::size_t i = 0; i < nn; ++i) {
            auto idx = g.node_coords(i);
            if (g.is_boundary(idx)) continue;
            double w = 1.0;
            for (int d = 0; d < g.dim(); ++d)
                w *= std::sin(kPi * double(idx[std::size_t(d)]) * double(l[std::size_t(d)]) /
                              double(g.axis(d).m));
            acc += field.values()[i] * w;
        }
        out.values()[flat] = acc;
    }
    return out;
}

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1,1]
const double kGlx[15] = {-0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
                         -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
                         -0.2011940939974345, 0.0,                  0.2011940939974345,
                         0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
                         0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
const double kGlw[15] = {0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
                         0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
                         0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
                         0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
                         0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

double gl15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 15; ++i) acc += kGlw[i] * f(mid + half * kGlx[i]);
    return half * acc;
}

double integrate_rec(const std::function<double(double)>& f, double a, double b, double whole,
                     double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gl15(f, a, mid), right = gl15(f, mid, b);
    if (depth > 40 || std::abs(left + right - whole) < tol) return left + right;
    return integrate_rec(f, a, mid, left, 0.5 * tol, depth + 1) +
           integrate_rec(f, mid, b, right, 0.5 * tol, depth + 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    return integrate_rec(f, a, b, gl15(f, a, b), tol, 0);
}

double max_abs_diff(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs_diff_fields(const gpe::ComplexField& a, const gpe::ComplexField& b) {
    return max_abs_diff(a.values(), b.values());
}

gpe::ComplexField random_field(const gpe::Grid& grid, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    gpe::ComplexField out(grid);
    const std::size_t n = grid.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        auto idx = grid.node_coords(i);
        if (grid.is_boundary(idx)) continue;
        out.values()[i] = cdouble{dist(rng), dist(rng)};
    }
    return out;
}

} // namespace ref
