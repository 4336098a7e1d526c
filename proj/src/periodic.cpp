#include "gpe/periodic.hpp"

#include <cmath>
#include <numbers>

#include "gpe/fft.hpp"

namespace gpe {

namespace {
constexpr double kPi = std::numbers::pi;
}

PeriodicBox::PeriodicBox(int dim, const std::array<double, 3>& a,
                         const std::array<double, 3>& length, const std::array<int, 3>& m)
    : dim_(dim), a_(a), len_(length), m_(m) {
    if (dim < 1 || dim > 3) throw InvalidInput("periodic box: dimension must be 1, 2 or 3");
    for (int d = 0; d < dim; ++d) {
        if (!(len_[std::size_t(d)] > 0.0)) throw InvalidInput("periodic box: length must be positive");
        if (m_[std::size_t(d)] < 8) throw InvalidInput("periodic box: node count must be >= 8");
    }
}

PeriodicBox PeriodicBox::from_grid(const Grid& grid) {
    std::array<double, 3> a{0.0, 0.0, 0.0}, len{1.0, 1.0, 1.0};
    std::array<int, 3> m{1, 1, 1};
    for (int d = 0; d < grid.dim(); ++d) {
        a[std::size_t(d)] = grid.axis(d).a;
        len[std::size_t(d)] = grid.axis(d).length();
        m[std::size_t(d)] = grid.axis(d).m;
    }
    return PeriodicBox(grid.dim(), a, len, m);
}

double PeriodicBox::cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim_; ++d) v *= spacing(d);
    return v;
}

std::size_t PeriodicBox::size() const {
    std::size_t n = 1;
    for (int d = 0; d < dim_; ++d) n *= std::size_t(m_[std::size_t(d)]);
    return n;
}

std::size_t PeriodicBox::index(const std::array<int, 3>& idx) const {
    std::size_t flat = 0;
    for (int d = 0; d < dim_; ++d) flat = flat * std::size_t(m_[std::size_t(d)]) + std::size_t(idx[std::size_t(d)]);
    return flat;
}

std::array<int, 3> PeriodicBox::coords(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int d = dim_ - 1; d >= 0; --d) {
        std::size_t n = std::size_t(m_[std::size_t(d)]);
        idx[std::size_t(d)] = int(flat % n);
        flat /= n;
    }
    return idx;
}

std::array<double, 3> PeriodicBox::point(const std::array<int, 3>& idx) const {
    std::array<double, 3> p{0.0, 0.0, 0.0};
    for (int d = 0; d < dim_; ++d)
        p[std::size_t(d)] = a_[std::size_t(d)] + idx[std::size_t(d)] * spacing(d);
    return p;
}

double PeriodicBox::frequency(int axis, int index) const {
    const int m = m_[std::size_t(axis)];
    int l = index <= m / 2 ? index : index - m;
    if (index == m / 2) l = m / 2; // Nyquist kept positive
    return 2.0 * kPi * double(l) / len_[std::size_t(axis)];
}

namespace {

void box_fft(const PeriodicBox& box, std::vector<cdouble>& data, bool inverse) {
    if (data.size() != box.size()) throw InvalidInput("box fft: array shape mismatch");
    std::array<std::size_t, 3> dims{1, 1, 1};
    for (int d = 0; d < box.dim(); ++d) dims[std::size_t(d)] = std::size_t(box.nodes(d));
    for (int ax = 0; ax < box.dim(); ++ax) {
        const std::size_t len = dims[std::size_t(ax)];
        const auto& plan = fft::plan_for(len);
        std::vector<std::pair<std::size_t, std::size_t>> lines;
        for_each_line(dims, box.dim(), ax, [&](std::size_t base, std::size_t stride) {
            lines.emplace_back(base, stride);
        });
        fft::parallel_for(lines.size(), [&](std::size_t i) {
            thread_local std::vector<cdouble> scratch;
            scratch.resize(len);
            auto [base, stride] = lines[i];
            for (std::size_t j = 0; j < len; ++j) scratch[j] = data[base + j * stride];
            if (inverse)
                plan.inverse(scratch.data());
            else
                plan.forward(scratch.data());
            for (std::size_t j = 0; j < len; ++j) data[base + j * stride] = scratch[j];
        });
    }
}

} // namespace

void box_fft_forward(const PeriodicBox& box, std::vector<cdouble>& data) {
    box_fft(box, data, false);
}

void box_fft_inverse(const PeriodicBox& box, std::vector<cdouble>& data) {
    box_fft(box, data, true);
}

PeriodicField sample_periodic(const PeriodicBox& box,
                              const std::function<cdouble(const std::array<double, 3>&)>& f) {
    PeriodicField out(box);
    const std::size_t n = box.size();
    for (std::size_t i = 0; i < n; ++i) out.values[i] = f(box.point(box.coords(i)));
    return out;
}

double periodic_mass(const PeriodicField& f) {
    double acc = 0.0;
    for (const cdouble& v : f.values) acc += std::norm(v);
    return f.box.cell_volume() * acc;
}

double periodic_energy(const PeriodicField& f, double beta, const std::vector<double>* potential,
                       double kinetic_coeff) {
    const PeriodicBox& box = f.box;
    std::vector<cdouble> hat = f.values;
    box_fft_forward(box, hat);
    double kin = 0.0;
    const std::size_t n = box.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto idx = box.coords(i);
        double k2 = 0.0;
        for (int d = 0; d < box.dim(); ++d) {
            double k = box.frequency(d, idx[std::size_t(d)]);
            k2 += k * k;
        }
        kin += k2 * std::norm(hat[i]);
    }
    // Parseval: sum_j |psi_j|^2 = (1/N) sum_k |psi_hat_k|^2
    kin *= kinetic_coeff * box.cell_volume() / double(n);

    double pot = 0.0, quart = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double rho = std::norm(f.values[i]);
        if (potential) pot += (*potential)[i] * rho;
        quart += rho * rho;
    }
    return kin + box.cell_volume() * (pot + 0.5 * beta * quart);
}

void periodic_tssp_step(PeriodicField& f, double beta, double tau,
                        const std::vector<double>* potential, double epsilon) {
    const PeriodicBox& box = f.box;
    const std::size_t n = box.size();
    auto kinetic_half = [&] {
        box_fft_forward(box, f.values);
        for (std::size_t i = 0; i < n; ++i) {
            auto idx = box.coords(i);
            double k2 = 0.0;
            for (int d = 0; d < box.dim(); ++d) {
                double k = box.frequency(d, idx[std::size_t(d)]);
                k2 += k * k;
            }
            const double phase = -0.25 * tau * epsilon * k2;
            f.values[i] *= cdouble{std::cos(phase), std::sin(phase)};
        }
        box_fft_inverse(box, f.values);
    };
    kinetic_half();
    for (std::size_t i = 0; i < n; ++i) {
        const double v = potential ? (*potential)[i] : 0.0;
        const double phase = -tau * (v + beta * std::norm(f.values[i])) / epsilon;
        f.values[i] *= cdouble{std::cos(phase), std::sin(phase)};
    }
    kinetic_half();
}

} // namespace gpe
