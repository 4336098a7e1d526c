#include "gpe/cgpe.hpp"

#include <cmath>

namespace gpe {

namespace {

PeriodicBox padded_x_box(const Grid& grid) {
    std::array<double, 3> a{0.0, 0.0, 0.0}, len{1.0, 1.0, 1.0};
    std::array<int, 3> m{1, 1, 1};
    for (int d = 0; d < grid.dim(); ++d) {
        const Axis& ax = grid.axis(d);
        if (d == 0) {
            a[0] = ax.a - 0.5 * ax.length();
            len[0] = 2.0 * ax.length();
            m[0] = 2 * ax.m;
        } else {
            a[std::size_t(d)] = ax.a;
            len[std::size_t(d)] = ax.length();
            m[std::size_t(d)] = ax.m;
        }
    }
    return PeriodicBox(grid.dim(), a, len, m);
}

} // namespace

CgpeStepper::CgpeStepper(const Grid& grid, const ModelParams& params, const SpinOrbitParams& so,
                         CgpeForm form)
    : grid_(grid), params_(params), so_(so), form_(form), box_(padded_x_box(grid)),
      offset_{grid.axis(0).m / 2, 0, 0}, psi1_(box_.size(), cdouble{0.0, 0.0}),
      psi2_(box_.size(), cdouble{0.0, 0.0}) {
    params_.validate();
    potential_.resize(box_.size());
    const std::size_t n = box_.size();
    for (std::size_t i = 0; i < n; ++i)
        potential_[i] = harmonic_potential(box_.point(box_.coords(i)), params_.trap, params_.dim);
}

void CgpeStepper::load(const ComplexFieldPair& state) {
    if (state.grid() != grid_) throw InvalidInput("cgpe: state grid mismatch");
    std::fill(psi1_.begin(), psi1_.end(), cdouble{0.0, 0.0});
    std::fill(psi2_.begin(), psi2_.end(), cdouble{0.0, 0.0});
    const std::size_t n = grid_.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        auto idx = grid_.node_coords(i);
        std::array<int, 3> p = idx;
        p[0] += offset_[0];
        bool wraps = false;
        for (int d = 0; d < grid_.dim(); ++d)
            if (p[std::size_t(d)] >= box_.nodes(d)) wraps = true; // Dirichlet node m on an unpadded axis
        if (wraps) continue;                                      // identically zero anyway
        psi1_[box_.index(p)] = state.first.values()[i];
        psi2_[box_.index(p)] = state.second.values()[i];
    }
}

ComplexFieldPair CgpeStepper::unload() const {
    ComplexField f1(grid_), f2(grid_);
    const std::size_t n = grid_.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        auto idx = grid_.node_coords(i);
        if (grid_.is_boundary(idx)) continue;
        std::array<int, 3> p = idx;
        p[0] += offset_[0];
        f1.values()[i] = psi1_[box_.index(p)];
        f2.values()[i] = psi2_[box_.index(p)];
    }
    return ComplexFieldPair(std::move(f1), std::move(f2));
}

void CgpeStepper::kinetic_half(double tau) {
    box_fft_forward(box_, psi1_);
    box_fft_forward(box_, psi2_);
    const std::size_t n = box_.size();
    const double k0 = form_ == CgpeForm::Original ? so_.k0 : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto idx = box_.coords(i);
        double k2 = 0.0;
        for (int d = 0; d < grid_.dim(); ++d) {
            double k = box_.frequency(d, idx[std::size_t(d)]);
            k2 += k * k;
        }
        const double kx = box_.frequency(0, idx[0]);
        // component symbols k^2/2 -+ k0 kx from (-1/2 Lap +- i k0 d_x)
        const double h1 = 0.5 * k2 - k0 * kx;
        const double h2 = 0.5 * k2 + k0 * kx;
        const double p1 = -0.5 * tau * h1, p2 = -0.5 * tau * h2;
        psi1_[i] *= cdouble{std::cos(p1), std::sin(p1)};
        psi2_[i] *= cdouble{std::cos(p2), std::sin(p2)};
    }
    box_fft_inverse(box_, psi1_);
    box_fft_inverse(box_, psi2_);
}

void CgpeStepper::pointwise_full(double tau) {
    const std::size_t n = box_.size();
    const bool original = form_ == CgpeForm::Original;
    auto diagonal_half = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            const double r1 = std::norm(psi1_[i]), r2 = std::norm(psi2_[i]);
            double d1, d2;
            if (original) {
                d1 = potential_[i] + 0.5 * so_.delta + so_.beta11 * r1 + so_.beta12 * r2;
                d2 = potential_[i] - 0.5 * so_.delta + so_.beta12 * r1 + so_.beta22 * r2;
            } else {
                d1 = potential_[i] + so_.delta + so_.beta11 * r1 + so_.beta12 * r2;
                d2 = potential_[i] + so_.beta12 * r1 + so_.beta22 * r2;
            }
            const double p1 = -0.5 * tau * d1, p2 = -0.5 * tau * d2;
            psi1_[i] *= cdouble{std::cos(p1), std::sin(p1)};
            psi2_[i] *= cdouble{std::cos(p2), std::sin(p2)};
        }
    };
    diagonal_half();
    if (so_.rabi != 0.0) {
        // exact rotation e^{-i tau (Omega/2) sigma_x}, with e^{-+ 2 i k0 x}
        // phases on the couplings in the transformed form
        const double c = std::cos(0.5 * so_.rabi * tau);
        const double s = std::sin(0.5 * so_.rabi * tau);
        for (std::size_t i = 0; i < n; ++i) {
            cdouble cross12{0.0, -s}, cross21{0.0, -s};
            if (!original) {
                const double x = box_.point(box_.coords(i))[0];
                const double ph = 2.0 * so_.k0 * x;
                cross12 *= cdouble{std::cos(ph), -std::sin(ph)};
                cross21 *= cdouble{std::cos(ph), std::sin(ph)};
            }
            const cdouble a = psi1_[i], b = psi2_[i];
            psi1_[i] = c * a + cross12 * b;
            psi2_[i] = cross21 * a + c * b;
        }
    }
    diagonal_half();
}

void CgpeStepper::step(double tau) {
    kinetic_half(tau);
    pointwise_full(tau);
    kinetic_half(tau);
}

double CgpeStepper::padded_total_mass() const {
    double acc = 0.0;
    for (const cdouble& z : psi1_) acc += std::norm(z);
    for (const cdouble& z : psi2_) acc += std::norm(z);
    return box_.cell_volume() * acc;
}

double CgpeStepper::padded_component_mass(int component) const {
    const std::vector<cdouble>& v = component == 0 ? psi1_ : psi2_;
    double acc = 0.0;
    for (const cdouble& z : v) acc += std::norm(z);
    return box_.cell_volume() * acc;
}

ComplexFieldPair tssp_step_cgpe(const ComplexFieldPair& psi, const SpinOrbitParams& so,
                                const ModelParams& params, double tau, CgpeForm form) {
    CgpeStepper stepper(psi.grid(), params, so, form);
    stepper.load(psi);
    stepper.step(tau);
    return stepper.unload();
}

ComplexFieldPair cgpe_phase_transform(const ComplexFieldPair& state, TransformDirection dir,
                                      const SpinOrbitParams& so, double t) {
    const Grid& g = state.grid();
    const double omega = 0.5 * (so.delta - so.k0 * so.k0);
    ComplexFieldPair out = state;
    const std::size_t n = g.node_count();
    const double sign = dir == TransformDirection::ToTransformed ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.point(g.node_coords(i))[0];
        const double p1 = sign * (omega * t + so.k0 * x);
        const double p2 = sign * (omega * t - so.k0 * x);
        out.first.values()[i] *= cdouble{std::cos(p1), std::sin(p1)};
        out.second.values()[i] *= cdouble{std::cos(p2), std::sin(p2)};
    }
    return out;
}

Trajectory evolve_cgpe(const ComplexFieldPair& psi0, const ModelParams& params,
                       const SpinOrbitParams& so, const EvolveConfig& config, CgpeForm form) {
    params.validate();
    config.validate();
    const Grid& g = psi0.grid();
    if (g.dim() != params.dim) throw InvalidInput("evolve_cgpe: dimension mismatch");

    CgpeStepper stepper(g, params, so, form);
    stepper.load(psi0);

    const long nsteps = config.t_final > 0.0 ? long(std::llround(config.t_final / config.tau)) : 0;
    Trajectory traj;
    const double mass0 = stepper.padded_total_mass();
    double e0 = 0.0;

    auto record = [&](double t) {
        ComplexFieldPair pair = stepper.unload();
        ObservableRecord rec;
        rec.t = t;
        rec.mass = mass_pair(pair);
        ModelParams obs = params;
        obs.omega = 0.0;
        rec.energy = energy_pair(pair, so, obs);
        rec.mu = rec.energy.total + rec.energy.interaction;
        auto w1 = widths(pair.first), w2 = widths(pair.second);
        auto c1 = center_of_mass(pair.first), c2 = center_of_mass(pair.second);
        for (int d = 0; d < 3; ++d) {
            rec.widths[std::size_t(d)] = w1[std::size_t(d)] + w2[std::size_t(d)];
            rec.xc[std::size_t(d)] = c1[std::size_t(d)] + c2[std::size_t(d)];
        }
        if (params.dim >= 2)
            rec.lz = angular_momentum(pair.first) + angular_momentum(pair.second);
        traj.records.push_back(rec);
        if (traj.records.size() == 1) e0 = rec.energy.total;
        traj.energy_drift = std::max(traj.energy_drift,
                                     std::abs(rec.energy.total - e0) / std::max(1.0, std::abs(e0)));
        traj.mass_drift = std::max(traj.mass_drift, std::abs(rec.mass - mass0));
        if (config.on_progress) config.on_progress(t, config.t_final);
    };

    record(0.0);
    for (long step = 1; step <= nsteps; ++step) {
        stepper.step(config.tau);
        const double t = double(step) * config.tau;
        const double m = stepper.padded_total_mass();
        if (!std::isfinite(m))
            throw BlowUp("evolve_cgpe: non-finite values", t);
        if (std::abs(m - mass0) > config.mass_abort_tol)
            throw BlowUp("evolve_cgpe: total mass deviated beyond tolerance", t);
        if (step % config.stride == 0 || step == nsteps) record(t);
    }
    return traj;
}

} // namespace gpe
