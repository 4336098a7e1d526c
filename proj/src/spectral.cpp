#include "gpe/spectral.hpp"

#include <cmath>
#include <numbers>

#include "gpe/fft.hpp"

namespace gpe {

namespace {

constexpr double kPi = std::numbers::pi;

/// DST-I of a length m-1 line through a 2m complex FFT:
/// out_l = sum_{j=1}^{m-1} in_j sin(pi j l / m), l = 1..m-1.
/// in/out may alias; scratch must have size 2m.
void dst_line(const cdouble* in, cdouble* out, int m, std::size_t stride_in,
              std::size_t stride_out, std::vector<cdouble>& scratch) {
    const auto& plan = fft::plan_for(std::size_t(2 * m));
    scratch.assign(std::size_t(2 * m), cdouble{0.0, 0.0});
    for (int j = 1; j < m; ++j) {
        cdouble v = in[std::size_t(j - 1) * stride_in];
        scratch[std::size_t(j)] = v;
        scratch[std::size_t(2 * m - j)] = -v;
    }
    plan.forward(scratch.data());
    const cdouble half_i{0.0, 0.5};
    for (int l = 1; l < m; ++l) out[std::size_t(l - 1) * stride_out] = half_i * scratch[std::size_t(l)];
}

/// Cosine synthesis on all nodes: out_j = sum_{l=1}^{m-1} d_l cos(pi j l / m),
/// j = 0..m, via the even extension of d.
void cosine_synthesis_line(const cdouble* in, cdouble* out, int m, std::size_t stride_in,
                           std::size_t stride_out, std::vector<cdouble>& scratch) {
    const auto& plan = fft::plan_for(std::size_t(2 * m));
    scratch.assign(std::size_t(2 * m), cdouble{0.0, 0.0});
    for (int l = 1; l < m; ++l) {
        cdouble v = in[std::size_t(l - 1) * stride_in];
        scratch[std::size_t(l)] = v;
        scratch[std::size_t(2 * m - l)] = v;
    }
    plan.forward(scratch.data());
    for (int j = 0; j <= m; ++j) out[std::size_t(j) * stride_out] = 0.5 * scratch[std::size_t(j)];
}

std::array<std::size_t, 3> interior_dims(const Grid& g) {
    std::array<std::size_t, 3> d{1, 1, 1};
    for (int a = 0; a < g.dim(); ++a) d[std::size_t(a)] = std::size_t(g.axis(a).m - 1);
    return d;
}

std::array<std::size_t, 3> node_dims(const Grid& g) {
    std::array<std::size_t, 3> d{1, 1, 1};
    for (int a = 0; a < g.dim(); ++a) d[std::size_t(a)] = std::size_t(g.axis(a).m + 1);
    return d;
}

/// Gathers the interior of a full node array into an interior-shaped array.
void gather_interior(const Grid& g, const std::vector<cdouble>& nodes,
                     std::vector<cdouble>& interior) {
    const auto nd = node_dims(g);
    const auto id = interior_dims(g);
    interior.resize(g.interior_count());
    const int dim = g.dim();
    std::size_t n_in = g.interior_count();
    for (std::size_t flat = 0; flat < n_in; ++flat) {
        std::size_t rem = flat, node_flat = 0;
        for (int d = dim - 1; d >= 0; --d) {
            std::size_t c = rem % id[std::size_t(d)];
            rem /= id[std::size_t(d)];
            // interior coordinate c corresponds to node coordinate c+1
            std::size_t mul = 1;
            for (int e = d + 1; e < dim; ++e) mul *= nd[std::size_t(e)];
            node_flat += (c + 1) * mul;
        }
        interior[flat] = nodes[node_flat];
    }
}

void scatter_interior(const Grid& g, const std::vector<cdouble>& interior,
                      std::vector<cdouble>& nodes) {
    const auto nd = node_dims(g);
    const auto id = interior_dims(g);
    const int dim = g.dim();
    std::size_t n_in = g.interior_count();
    for (std::size_t flat = 0; flat < n_in; ++flat) {
        std::size_t rem = flat, node_flat = 0;
        for (int d = dim - 1; d >= 0; --d) {
            std::size_t c = rem % id[std::size_t(d)];
            rem /= id[std::size_t(d)];
            std::size_t mul = 1;
            for (int e = d + 1; e < dim; ++e) mul *= nd[std::size_t(e)];
            node_flat += (c + 1) * mul;
        }
        nodes[node_flat] = interior[flat];
    }
}

/// Applies the DST along every axis of an interior-shaped array in place.
void dst_all_axes(const Grid& g, std::vector<cdouble>& data) {
    const auto id = interior_dims(g);
    const int dim = g.dim();
    for (int ax = 0; ax < dim; ++ax) {
        const int m = g.axis(ax).m;
        std::vector<std::pair<std::size_t, std::size_t>> lines;
        for_each_line(id, dim, ax, [&](std::size_t base, std::size_t stride) {
            lines.emplace_back(base, stride);
        });
        fft::parallel_for(lines.size(), [&](std::size_t i) {
            thread_local std::vector<cdouble> scratch;
            auto [base, stride] = lines[i];
            dst_line(data.data() + base, data.data() + base, m, stride, stride, scratch);
        });
    }
}

} // namespace

SineCoeffs::SineCoeffs(Grid grid)
    : grid_(std::move(grid)), values_(grid_.interior_count(), cdouble{0.0, 0.0}) {}

double SineCoeffs::frequency(int axis, int l) const {
    const Axis& ax = grid_.axis(axis);
    return double(l) * kPi / ax.length();
}

std::size_t SineCoeffs::coeff_index(const std::array<int, 3>& l) const {
    std::size_t flat = 0;
    for (int d = 0; d < grid_.dim(); ++d)
        flat = flat * std::size_t(grid_.axis(d).m - 1) + std::size_t(l[std::size_t(d)] - 1);
    return flat;
}

std::array<int, 3> SineCoeffs::coeff_numbers(std::size_t flat) const {
    std::array<int, 3> l{1, 1, 1};
    for (int d = grid_.dim() - 1; d >= 0; --d) {
        std::size_t n = std::size_t(grid_.axis(d).m - 1);
        l[std::size_t(d)] = int(flat % n) + 1;
        flat /= n;
    }
    return l;
}

double SineCoeffs::mu_squared(std::size_t flat) const {
    auto l = coeff_numbers(flat);
    double s = 0.0;
    for (int d = 0; d < grid_.dim(); ++d) {
        double mu = frequency(d, l[std::size_t(d)]);
        s += mu * mu;
    }
    return s;
}

SineCoeffs sine_forward(const ComplexField& field) {
    const Grid& g = field.grid();
    if (field.values().size() != g.node_count())
        throw InvalidInput("sine_forward: field shape does not match grid");
    SineCoeffs out(g);
    gather_interior(g, field.values(), out.values());
    dst_all_axes(g, out.values());
    return out;
}

ComplexField sine_inverse(const SineCoeffs& coeffs) {
    const Grid& g = coeffs.grid();
    if (coeffs.values().size() != g.interior_count())
        throw InvalidInput("sine_inverse: coefficient shape does not match grid");
    std::vector<cdouble> work = coeffs.values();
    dst_all_axes(g, work);
    double scale = 1.0;
    for (int d = 0; d < g.dim(); ++d) scale *= 2.0 / double(g.axis(d).m);
    for (cdouble& v : work) v *= scale;
    ComplexField out(g);
    scatter_interior(g, work, out.values());
    return out;
}

double coefficient_weight(const Grid& grid) {
    double w = 1.0;
    for (int d = 0; d < grid.dim(); ++d)
        w *= 2.0 * grid.axis(d).spacing() / double(grid.axis(d).m);
    return w;
}

ComplexField sine_derivative(const ComplexField& field, int axis) {
    const Grid& g = field.grid();
    if (axis < 0 || axis >= g.dim()) throw InvalidInput("sine_derivative: axis out of range");

    // DST along `axis` only, other axes stay in physical space.
    const auto nd = node_dims(g);
    const int m = g.axis(axis).m;
    std::vector<std::pair<std::size_t, std::size_t>> node_lines;
    for_each_line(nd, g.dim(), axis, [&](std::size_t base, std::size_t stride) {
        node_lines.emplace_back(base, stride);
    });

    ComplexField out(g);
    const double len = g.axis(axis).length();
    fft::parallel_for(node_lines.size(), [&](std::size_t i) {
        thread_local std::vector<cdouble> scratch;
        thread_local std::vector<cdouble> line, coef;
        auto [nbase, nstride] = node_lines[i];
        line.assign(std::size_t(m - 1), cdouble{0.0, 0.0});
        for (int j = 1; j < m; ++j) line[std::size_t(j - 1)] = field.values()[nbase + std::size_t(j) * nstride];
        coef.assign(std::size_t(m - 1), cdouble{0.0, 0.0});
        dst_line(line.data(), coef.data(), m, 1, 1, scratch);
        // d/dx of (2/m) sum c_l sin(mu_l (x-a)) = (2/m) sum c_l mu_l cos(...)
        for (int l = 1; l < m; ++l) coef[std::size_t(l - 1)] *= double(l) * kPi / len;
        thread_local std::vector<cdouble> deriv;
        deriv.assign(std::size_t(m + 1), cdouble{0.0, 0.0});
        cosine_synthesis_line(coef.data(), deriv.data(), m, 1, 1, scratch);
        const double scale = 2.0 / double(m);
        for (int j = 0; j <= m; ++j)
            out.values()[nbase + std::size_t(j) * nstride] = scale * deriv[std::size_t(j)];
    });
    return out;
}

cdouble eval_sine_series(const SineCoeffs& coeffs, const std::array<double, 3>& p) {
    const Grid& g = coeffs.grid();
    const int dim = g.dim();
    // per-axis sine tables at the point
    std::array<std::vector<double>, 3> s;
    double scale = 1.0;
    for (int d = 0; d < dim; ++d) {
        const Axis& ax = g.axis(d);
        const int m = ax.m;
        s[std::size_t(d)].resize(std::size_t(m - 1));
        const double theta = kPi * (p[std::size_t(d)] - ax.a) / ax.length();
        // sin(l*theta) by recurrence
        const double c1 = std::cos(theta), s1 = std::sin(theta);
        double sp = 0.0, sc = s1; // sin(0), sin(theta)
        for (int l = 1; l < m; ++l) {
            s[std::size_t(d)][std::size_t(l - 1)] = sc;
            double nxt = 2.0 * c1 * sc - sp;
            sp = sc;
            sc = nxt;
        }
        scale *= 2.0 / double(m);
    }
    cdouble acc{0.0, 0.0};
    const std::size_t n = coeffs.values().size();
    for (std::size_t flat = 0; flat < n; ++flat) {
        auto l = coeffs.coeff_numbers(flat);
        double w = 1.0;
        for (int d = 0; d < dim; ++d) w *= s[std::size_t(d)][std::size_t(l[std::size_t(d)] - 1)];
        acc += coeffs.values()[flat] * w;
    }
    return scale * acc;
}

} // namespace gpe
