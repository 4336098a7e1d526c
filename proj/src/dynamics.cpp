#include "gpe/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "gpe/dipolar.hpp"
#include "gpe/spectral.hpp"

namespace gpe {

namespace {

bool all_finite(const std::vector<cdouble>& v) {
    for (const cdouble& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

/// Multiplier table for the kinetic half step e^{-i tau eps |mu|^2 / 4}.
std::vector<cdouble> kinetic_half_multiplier(const Grid& grid, double tau, double epsilon) {
    SineCoeffs probe((Grid(grid)));
    std::vector<cdouble> mult(grid.interior_count());
    for (std::size_t l = 0; l < mult.size(); ++l) {
        const double phase = -0.25 * tau * epsilon * probe.mu_squared(l);
        mult[l] = cdouble{std::cos(phase), std::sin(phase)};
    }
    return mult;
}

void kinetic_half_step_cached(ComplexField& psi, const std::vector<cdouble>& mult) {
    SineCoeffs c = sine_forward(psi);
    for (std::size_t l = 0; l < mult.size(); ++l) c.values()[l] *= mult[l];
    psi = sine_inverse(c);
}

/// Kinetic half step in sine space: multiplier e^{-i tau eps |mu|^2 / 4}.
void kinetic_half_step(ComplexField& psi, double tau, double epsilon) {
    kinetic_half_step_cached(psi, kinetic_half_multiplier(psi.grid(), tau, epsilon));
}

/// Exact pointwise phase step e^{-i tau (V + beta rho [+ Phi]) / eps};
/// |psi| is invariant, so the frozen density makes the step exact.
void phase_step(ComplexField& psi, double tau, double beta, double epsilon,
                const std::vector<double>& v, const std::vector<double>* extra) {
    const std::size_t n = psi.values().size();
    for (std::size_t i = 0; i < n; ++i) {
        double pot = v[i] + beta * std::norm(psi.values()[i]);
        if (extra) pot += (*extra)[i];
        const double phase = -tau * pot / epsilon;
        psi.values()[i] *= cdouble{std::cos(phase), std::sin(phase)};
    }
}

void strang_step(ComplexField& psi, const ModelParams& params, double tau,
                 const std::vector<double>& v, const std::vector<double>* extra) {
    kinetic_half_step(psi, tau, params.epsilon);
    phase_step(psi, tau, params.beta, params.epsilon, v, extra);
    kinetic_half_step(psi, tau, params.epsilon);
}

void strang_step_cached(ComplexField& psi, const ModelParams& params, double tau,
                        const std::vector<cdouble>& kin_mult, const std::vector<double>& v,
                        const std::vector<double>* extra) {
    kinetic_half_step_cached(psi, kin_mult);
    phase_step(psi, tau, params.beta, params.epsilon, v, extra);
    kinetic_half_step_cached(psi, kin_mult);
}

std::vector<double> rotating_potential_array(const Grid& grid, const ModelParams& params,
                                             double t) {
    std::vector<double> w(grid.node_count());
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i)
        w[i] = rotating_potential(grid.point(grid.node_coords(i)), t, params.omega, params.trap,
                                  params.dim);
    return w;
}

} // namespace

ComplexField tssp_step(const ComplexField& psi, const ModelParams& params, double tau,
                       const std::vector<double>* potential_override) {
    params.validate();
    if (!(tau != 0.0)) throw InvalidInput("tssp_step: tau must be nonzero");
    if (psi.grid().dim() != params.dim) throw InvalidInput("tssp_step: dimension mismatch");
    if (potential_override && potential_override->size() != psi.grid().node_count())
        throw InvalidInput("tssp_step: potential override shape mismatch");
    ComplexField out = psi;
    std::vector<double> v =
        potential_override ? *potential_override : potential_array(psi.grid(), params.trap);
    strang_step(out, params, tau, v, nullptr);
    return out;
}

ComplexField tssp_step_rotating(const ComplexField& phi, const ModelParams& params, double t_n,
                                double tau) {
    params.validate();
    if (params.dim < 2) throw InvalidInput("tssp_step_rotating: needs dim 2 or 3");
    if (params.trap.gamma_y == 1.0) {
        // transported trap is time independent: identical code path
        return tssp_step(phi, params, tau);
    }
    ComplexField out = phi;
    std::vector<double> w = rotating_potential_array(phi.grid(), params, t_n + 0.5 * tau);
    strang_step(out, params, tau, w, nullptr);
    return out;
}

ComplexField map_rotating_to_eulerian(const ComplexField& phi, const ModelParams& params,
                                      double t) {
    const Grid& g = phi.grid();
    if (g.dim() < 2) throw InvalidInput("map_rotating_to_eulerian: needs dim 2 or 3");
    SineCoeffs c = sine_forward(phi);
    auto a = rotation_matrix(t, params.omega, g.dim());
    // transpose = inverse rotation
    std::array<std::array<double, 3>, 3> at{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) at[std::size_t(i)][std::size_t(j)] = a[std::size_t(j)][std::size_t(i)];

    ComplexField out(g);
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        auto idx = g.node_coords(i);
        if (g.is_boundary(idx)) continue;
        auto q = apply_rotation(at, g.point(idx), g.dim());
        bool inside = true;
        for (int d = 0; d < g.dim(); ++d) {
            if (q[std::size_t(d)] <= g.axis(d).a || q[std::size_t(d)] >= g.axis(d).b) {
                inside = false;
                break;
            }
        }
        out.values()[i] = inside ? eval_sine_series(c, q) : cdouble{0.0, 0.0};
    }
    return out;
}

Trajectory evolve(const ComplexField& psi0, const ModelParams& params,
                  const EvolveConfig& config) {
    params.validate();
    config.validate();
    if (config.scheme == Scheme::CgpeSpinOrbit)
        throw InvalidInput("evolve: spin-orbit dynamics uses evolve_cgpe");
    if (config.scheme == Scheme::GpeDipolar && !params.dipole)
        throw InvalidInput("evolve: dipolar scheme needs dipole parameters");
    if (config.scheme == Scheme::GpeRotating && params.dim < 2)
        throw InvalidInput("evolve: rotating scheme needs dim 2 or 3");
    const Grid& g = psi0.grid();
    if (g.dim() != params.dim) throw InvalidInput("evolve: dimension mismatch");

    const long nsteps = config.t_final > 0.0 ? long(std::llround(config.t_final / config.tau)) : 0;
    const bool rotating = config.scheme == Scheme::GpeRotating;
    const bool dipolar = config.scheme == Scheme::GpeDipolar;
    const bool static_potential = !rotating || params.trap.gamma_y == 1.0;

    std::vector<double> v;
    if (config.zero_potential)
        v.assign(g.node_count(), 0.0);
    else if (static_potential)
        v = potential_array(g, params.trap);

    // snapshot step indices (nearest step boundary)
    std::vector<long> snap_steps;
    for (double ts : config.snapshot_times)
        snap_steps.push_back(std::clamp(long(std::llround(ts / config.tau)), 0L, nsteps));

    ComplexField psi = psi0;
    Trajectory traj;
    const double mass0 = mass(psi);
    double e0 = 0.0;

    auto record = [&](double t) {
        ObservableRecord rec;
        rec.t = t;
        rec.mass = mass(psi);
        std::vector<double> dip_phi;
        const std::vector<double>* dip_ptr = nullptr;
        if (dipolar) {
            dip_phi = dipolar_potential(psi, *params.dipole);
            dip_ptr = &dip_phi;
        }
        // the Lagrangian-frame functional carries no L_z term; rotation is
        // in the coordinates
        ModelParams obs = params;
        obs.omega = 0.0;
        const std::vector<double>* pot_ptr = nullptr;
        std::vector<double> w;
        if (config.zero_potential) {
            pot_ptr = &v;
        } else if (!static_potential) {
            w = rotating_potential_array(g, params, t);
            pot_ptr = &w;
        }
        rec.energy = energy(psi, obs, GradientMethod::Spectral, dip_ptr, pot_ptr);
        rec.mu = rec.energy.total + rec.energy.interaction + rec.energy.dipolar;
        rec.widths = widths(psi);
        rec.xc = center_of_mass(psi);
        if (params.dim >= 2) rec.lz = angular_momentum(psi);
        traj.records.push_back(rec);
        if (traj.records.size() == 1) e0 = rec.energy.total;
        traj.energy_drift = std::max(traj.energy_drift,
                                     std::abs(rec.energy.total - e0) / std::max(1.0, std::abs(e0)));
        traj.mass_drift = std::max(traj.mass_drift, std::abs(rec.mass - mass0));
        if (config.on_progress) config.on_progress(t, config.t_final);
    };

    record(0.0);
    for (long s : snap_steps)
        if (s == 0) traj.snapshots.emplace_back(0.0, psi);

    const std::vector<cdouble> kin_mult =
        kinetic_half_multiplier(g, config.tau, params.epsilon);
    for (long step = 1; step <= nsteps; ++step) {
        const double t_prev = double(step - 1) * config.tau;
        if (rotating && !static_potential) {
            std::vector<double> w = rotating_potential_array(g, params, t_prev + 0.5 * config.tau);
            strang_step_cached(psi, params, config.tau, kin_mult, w, nullptr);
        } else if (dipolar) {
            kinetic_half_step_cached(psi, kin_mult);
            std::vector<double> dip_phi = dipolar_potential(psi, *params.dipole);
            phase_step(psi, config.tau, params.beta, params.epsilon, v, &dip_phi);
            kinetic_half_step_cached(psi, kin_mult);
        } else {
            strang_step_cached(psi, params, config.tau, kin_mult, v, nullptr);
        }

        const double t = double(step) * config.tau;
        if (!all_finite(psi.values()))
            throw BlowUp("evolve: non-finite values (finite-time blow-up or instability)", t);
        const double m = mass(psi);
        if (std::abs(m - mass0) > config.mass_abort_tol)
            throw BlowUp("evolve: discrete mass deviated beyond tolerance "
                         "(under-resolution or blow-up)",
                         t);
        if (step % config.stride == 0 || step == nsteps) {
            record(t);
            if (traj.energy_drift > config.energy_abort_tol)
                throw BlowUp("evolve: conserved energy drifted beyond tolerance "
                             "(under-resolution or finite-time blow-up)",
                             t);
        }
        for (std::size_t k = 0; k < snap_steps.size(); ++k)
            if (snap_steps[k] == step) traj.snapshots.emplace_back(t, psi);
    }
    return traj;
}

} // namespace gpe
