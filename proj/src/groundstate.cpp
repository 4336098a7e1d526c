#include "gpe/groundstate.hpp"

#include <algorithm>
#include <cmath>

#include "gpe/oracles.hpp"
#include "gpe/spectral.hpp"

namespace gpe {

namespace {


/// L_z phi = -i (x d_y - y d_x) phi, spectral derivatives.
ComplexField angular_term(const ComplexField& phi) {
    const Grid& g = phi.grid();
    ComplexField dx = sine_derivative(phi, 0);
    ComplexField dy = sine_derivative(phi, 1);
    ComplexField out(g);
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        auto p = g.point(g.node_coords(i));
        out.values()[i] = cdouble{0.0, -1.0} * (p[0] * dy.values()[i] - p[1] * dx.values()[i]);
    }
    out.zero_boundary();
    return out;
}

/// Backward-Euler solve of (1/tau - kc Lap + b) phi = rhs/tau with the
/// Laplacian in sine space; stabilized fixed-point iteration, warm-started
/// at phi0. `rhs` carries no 1/tau factor.
ComplexField besp_solve(const Grid& grid, const std::vector<double>& b, double kc, double tau,
                        const ComplexField& rhs, const ComplexField& phi0, double inner_tol) {
    double bmax = -1e300, bmin = 1e300;
    const std::size_t n = grid.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        bmax = std::max(bmax, b[i]);
        bmin = std::min(bmin, b[i]);
    }
    const double alpha = 0.5 * (bmax + bmin);

    SineCoeffs rhs_hat = sine_forward(rhs);
    ComplexField phi = phi0;
    ComplexField work(grid);
    const long max_inner = 5000;
    for (long k = 0; k < max_inner; ++k) {
        // work = (alpha - b) phi
        for (std::size_t i = 0; i < n; ++i) work.values()[i] = (alpha - b[i]) * phi.values()[i];
        work.zero_boundary();
        SineCoeffs w_hat = sine_forward(work);
        const std::size_t nc = w_hat.values().size();
        for (std::size_t l = 0; l < nc; ++l) {
            const double denom = 1.0 / tau + alpha + kc * w_hat.mu_squared(l);
            w_hat.values()[l] = (rhs_hat.values()[l] / tau + w_hat.values()[l]) / denom;
        }
        ComplexField next = sine_inverse(w_hat);
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            delta = std::max(delta, std::abs(next.values()[i] - phi.values()[i]));
        phi = std::move(next);
        if (delta <= inner_tol) return phi;
    }
    throw NumericalFailure("besp_solve: inner iteration did not converge");
}

/// Thomas solve of the 1D tridiagonal backward-Euler system.
void thomas_solve(std::vector<double>& diag, double off, std::vector<cdouble>& rhs) {
    const std::size_t n = rhs.size();
    std::vector<double> c(n);
    c[0] = off / diag[0];
    rhs[0] /= diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = diag[i] - off * c[i - 1];
        if (m == 0.0) throw NumericalFailure("thomas_solve: zero pivot");
        c[i] = off / m;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / m;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

/// FD backward-Euler solve: exact tridiagonal in 1D, factorized per-axis
/// sweeps (I + tau K_a) with K_a = -kc Lap_a + b/d in 2D/3D.
ComplexField befd_solve(const Grid& grid, const std::vector<double>& b, double kc, double tau,
                        const ComplexField& rhs_phys) {
    const int dim = grid.dim();
    ComplexField u = rhs_phys;
    std::array<std::size_t, 3> nd{1, 1, 1};
    for (int d = 0; d < dim; ++d) nd[std::size_t(d)] = std::size_t(grid.axis(d).m + 1);

    for (int ax = 0; ax < dim; ++ax) {
        const int m = grid.axis(ax).m;
        const double h = grid.axis(ax).spacing();
        const double off = -tau * kc / (h * h);
        std::vector<std::pair<std::size_t, std::size_t>> lines;
        for_each_line(nd, dim, ax, [&](std::size_t base, std::size_t stride) {
            lines.emplace_back(base, stride);
        });
        for (auto [base, stride] : lines) {
            std::vector<double> diag(std::size_t(m - 1));
            std::vector<cdouble> rhs(std::size_t(m - 1));
            for (int j = 1; j < m; ++j) {
                const std::size_t at = base + std::size_t(j) * stride;
                diag[std::size_t(j - 1)] =
                    1.0 + tau * (2.0 * kc / (h * h) + b[at] / double(dim));
                rhs[std::size_t(j - 1)] = u.values()[at];
            }
            thomas_solve(diag, off, rhs);
            for (int j = 1; j < m; ++j)
                u.values()[base + std::size_t(j) * stride] = rhs[std::size_t(j - 1)];
        }
    }
    u.zero_boundary();
    return u;
}

ComplexField gfdn_step_impl(const ComplexField& phi, const ModelParams& params, double tau,
                            GfdnBackend backend, const std::vector<double>& v,
                            bool take_magnitude, const ComplexField* rotation_rhs,
                            double inner_tol) {
    const Grid& g = phi.grid();
    const std::size_t n = g.node_count();
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = v[i] + params.beta * std::norm(phi.values()[i]);

    // right-hand side carries no 1/tau: phi^n + tau * Omega L_z phi^n
    ComplexField rhs = phi;
    if (rotation_rhs) {
        for (std::size_t i = 0; i < n; ++i)
            rhs.values()[i] += tau * params.omega * rotation_rhs->values()[i];
        rhs.zero_boundary();
    }

    ComplexField next = backend == GfdnBackend::SineSpectral
                            ? besp_solve(g, b, params.kinetic_coeff(), tau, rhs, phi, inner_tol)
                            : befd_solve(g, b, params.kinetic_coeff(), tau, rhs);
    if (take_magnitude) {
        for (std::size_t i = 0; i < n; ++i)
            next.values()[i] = cdouble{std::abs(next.values()[i]), 0.0};
        next.zero_boundary();
    }
    normalize_in_place(next);
    return next;
}

} // namespace

ComplexField gfdn_step(const ComplexField& phi, const ModelParams& params, double tau,
                       GfdnBackend backend) {
    params.validate();
    if (!(tau > 0.0)) throw InvalidInput("gfdn_step: tau must be positive");
    std::vector<double> v = potential_array(phi.grid(), params.trap);
    return gfdn_step_impl(phi, params, tau, backend, v, /*take_magnitude=*/true, nullptr, 1e-13);
}

ComplexField default_initial_guess(const ModelParams& params, const Grid& grid) {
    if (params.beta <= 10.0) {
        oracles::LinearGroundState lin = oracles::linear_ground_state(params.dim, params.trap);
        ComplexField f = ComplexField::sample(grid, [&](const std::array<double, 3>& p) {
            return cdouble{lin.profile(p), 0.0};
        });
        normalize_in_place(f);
        return f;
    }
    // inverted parabola, smoothed over one grid cell per axis
    TfGroundState tf = tf_ground_state(params, grid);
    ComplexField f = tf.phi;
    for (int d = 0; d < grid.dim(); ++d) {
        std::array<std::size_t, 3> nd{1, 1, 1};
        for (int e = 0; e < grid.dim(); ++e) nd[std::size_t(e)] = std::size_t(grid.axis(e).m + 1);
        ComplexField sm = f;
        std::vector<std::pair<std::size_t, std::size_t>> lines;
        for_each_line(nd, grid.dim(), d, [&](std::size_t base, std::size_t stride) {
            lines.emplace_back(base, stride);
        });
        const int m = grid.axis(d).m;
        for (auto [base, stride] : lines) {
            for (int j = 1; j < m; ++j) {
                const std::size_t at = base + std::size_t(j) * stride;
                sm.values()[at] = 0.25 * f.values()[at - stride] + 0.5 * f.values()[at] +
                                  0.25 * f.values()[at + stride];
            }
        }
        sm.zero_boundary();
        f = std::move(sm);
    }
    normalize_in_place(f);
    return f;
}

namespace {

GroundStateResult run_flow(const ModelParams& params, const Grid& grid, const GfdnConfig& config,
                           bool rotating) {
    params.validate();
    if (grid.dim() != params.dim)
        throw InvalidInput("solve_ground_state: grid/model dimension mismatch");

    ComplexField phi(grid);
    if (config.guess == InitialGuess::UserField) {
        if (!config.user_field) throw InvalidInput("solve_ground_state: user guess missing");
        if (config.user_field->grid() != grid)
            throw InvalidInput("solve_ground_state: user guess grid mismatch");
        phi = normalize(*config.user_field);
    } else if (config.guess == InitialGuess::Gaussian) {
        oracles::LinearGroundState lin = oracles::linear_ground_state(params.dim, params.trap);
        phi = normalize(ComplexField::sample(grid, [&](const std::array<double, 3>& p) {
            return cdouble{lin.profile(p), 0.0};
        }));
    } else if (config.guess == InitialGuess::ThomasFermi) {
        phi = normalize(tf_ground_state(params, grid).phi);
    } else {
        phi = default_initial_guess(params, grid);
    }
    if (!rotating) {
        // the nonrotating flow keeps real nonnegative iterates
        for (cdouble& z : phi.values()) z = cdouble{std::abs(z), 0.0};
        normalize_in_place(phi);
    }

    const double tau = config.resolved_tau(params.beta);
    const std::vector<double> v = potential_array(grid, params.trap);
    const std::size_t n = grid.node_count();

    double residual = 0.0;
    long iter = 0;
    double inner_tol = 1e-10;
    for (; iter < config.max_iters; ++iter) {
        ComplexField rot(grid);
        const ComplexField* rot_ptr = nullptr;
        if (rotating && params.omega != 0.0) {
            rot = angular_term(phi);
            rot_ptr = &rot;
        }
        ComplexField next = gfdn_step_impl(phi, params, tau, config.backend, v,
                                           /*take_magnitude=*/!rotating, rot_ptr, inner_tol);
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            delta = std::max(delta, std::abs(next.values()[i] - phi.values()[i]));
        residual = delta / tau;
        phi = std::move(next);
        inner_tol = std::clamp(1e-3 * delta, 1e-14, 1e-10);
        if (residual <= config.stop_tol) break;
    }
    if (residual > config.stop_tol && !config.return_on_max_iters)
        throw NonConvergence("solve_ground_state: iteration budget exhausted", residual);

    GroundStateResult out{phi, 0.0, 0.0, iter + 1, residual, 0.0, 0.0};
    ModelParams obs = params;
    if (!rotating) obs.omega = 0.0;
    EnergyBreakdown e = energy(phi, obs);
    out.energy = e.total;
    out.mu = chemical_potential(phi, obs);

    ComplexField hphi = apply_hamiltonian(phi, obs);
    ComplexField rot(grid);
    if (rotating && params.omega != 0.0) rot = angular_term(phi);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cdouble r = out.mu * phi.values()[i] - hphi.values()[i];
        if (rotating && params.omega != 0.0) r += params.omega * rot.values()[i];
        acc += std::norm(r);
    }
    out.eigen_residual = std::sqrt(grid.cell_volume() * acc);
    out.virial_residual =
        std::abs(2.0 * e.kinetic - 2.0 * e.potential + params.dim * e.interaction);
    return out;
}

} // namespace

GroundStateResult solve_ground_state(const ModelParams& params, const Grid& grid,
                                     const GfdnConfig& config) {
    if (params.beta < 0.0 && params.dim == 3)
        throw InvalidInput(
            "solve_ground_state: no ground state exists for attractive interactions in 3D");
    if (params.beta < 0.0 && params.dim == 2)
        throw InvalidInput(
            "solve_ground_state: attractive 2D interactions are outside the supported regime");
    return run_flow(params, grid, config, /*rotating=*/false);
}

GroundStateResult solve_ground_state_rotating(const ModelParams& params, const Grid& grid,
                                              const GfdnConfig& config) {
    if (params.dim < 2)
        throw InvalidInput("solve_ground_state_rotating: rotation needs dim 2 or 3");
    if (std::abs(params.omega) >= 1.0)
        throw InvalidInput(
            "solve_ground_state_rotating: no ground state exists for |Omega| >= 1");
    if (params.beta < 0.0)
        throw InvalidInput("solve_ground_state_rotating: beta must be nonnegative");
    return run_flow(params, grid, config, /*rotating=*/true);
}

TfGroundState tf_ground_state(const ModelParams& params, const Grid& grid) {
    if (!(params.beta > 0.0)) throw InvalidInput("tf_ground_state: beta must be positive");
    oracles::TfEstimates est = oracles::tf_estimates(params.beta, params.trap, params.dim);
    ComplexField phi = ComplexField::sample(grid, [&](const std::array<double, 3>& p) {
        double val = est.mu - harmonic_potential(p, params.trap, params.dim);
        return cdouble{val > 0.0 ? std::sqrt(val / params.beta) : 0.0, 0.0};
    });
    return TfGroundState{std::move(phi), est.mu, est.energy};
}

double suggested_half_width(const ModelParams& params, int axis) {
    double r = 0.0;
    if (params.beta > 0.0) {
        oracles::TfEstimates est = oracles::tf_estimates(params.beta, params.trap, params.dim);
        r = est.radii[std::size_t(axis)];
    }
    return std::max(8.0, 1.5 * r);
}

ComplexField apply_hamiltonian(const ComplexField& phi, const ModelParams& params,
                               const std::vector<double>* extra_potential) {
    const Grid& g = phi.grid();
    SineCoeffs c = sine_forward(phi);
    const std::size_t nc = c.values().size();
    const double kc = params.kinetic_coeff();
    for (std::size_t l = 0; l < nc; ++l) c.values()[l] *= kc * c.mu_squared(l);
    ComplexField out = sine_inverse(c);
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        double v = harmonic_potential(g.point(g.node_coords(i)), params.trap, params.dim) +
                   params.beta * std::norm(phi.values()[i]);
        if (extra_potential) v += (*extra_potential)[i];
        out.values()[i] += v * phi.values()[i];
    }
    out.zero_boundary();
    return out;
}

} // namespace gpe
