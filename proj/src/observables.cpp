#include "gpe/observables.hpp"

#include <cmath>

#include "gpe/spectral.hpp"

namespace gpe {

namespace {

/// Kinetic energy through the coefficient-space Parseval relation.
double kinetic_spectral(const ComplexField& psi, double coeff) {
    SineCoeffs c = sine_forward(psi);
    const double w = coefficient_weight(psi.grid());
    double acc = 0.0;
    const std::size_t n = c.values().size();
    for (std::size_t i = 0; i < n; ++i) acc += c.mu_squared(i) * std::norm(c.values()[i]);
    return coeff * w * acc;
}

/// Centered second-order differences; Dirichlet ghosts are zero.
double kinetic_fd(const ComplexField& psi, double coeff) {
    const Grid& g = psi.grid();
    double acc = 0.0;
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        auto idx = g.node_coords(i);
        if (g.is_boundary(idx)) continue;
        for (int d = 0; d < g.dim(); ++d) {
            auto up = idx, dn = idx;
            ++up[std::size_t(d)];
            --dn[std::size_t(d)];
            cdouble diff = (psi.at(up) - psi.at(dn)) / (2.0 * g.axis(d).spacing());
            acc += std::norm(diff);
        }
    }
    return coeff * g.cell_volume() * acc;
}

} // namespace

double mass(const ComplexField& psi) {
    double n = discrete_norm(psi);
    return n * n;
}

double component_mass(const ComplexField& psi) { return mass(psi); }

double mass_pair(const ComplexFieldPair& psi) { return mass(psi.first) + mass(psi.second); }

EnergyBreakdown energy(const ComplexField& psi, const ModelParams& params, GradientMethod method,
                       const std::vector<double>* dipolar_phi,
                       const std::vector<double>* potential_override) {
    const Grid& g = psi.grid();
    if (g.dim() != params.dim) throw InvalidInput("energy: field/model dimension mismatch");
    EnergyBreakdown e;
    e.kinetic = method == GradientMethod::Spectral ? kinetic_spectral(psi, params.kinetic_coeff())
                                                   : kinetic_fd(psi, params.kinetic_coeff());
    const double h = g.cell_volume();
    double pot = 0.0, quart = 0.0, dip = 0.0;
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        double rho = std::norm(psi.values()[i]);
        double v = potential_override
                       ? (*potential_override)[i]
                       : harmonic_potential(g.point(g.node_coords(i)), params.trap, params.dim);
        pot += v * rho;
        quart += rho * rho;
        if (dipolar_phi) dip += (*dipolar_phi)[i] * rho;
    }
    e.potential = h * pot;
    e.interaction = 0.5 * params.beta * h * quart;
    if (dipolar_phi) e.dipolar = 0.5 * h * dip;
    if (params.omega != 0.0 && params.dim >= 2)
        e.rotation = -params.omega * angular_momentum(psi);
    e.sum_parts();
    return e;
}

double chemical_potential(const ComplexField& phi, const ModelParams& params,
                          GradientMethod method, const std::vector<double>* dipolar_phi,
                          const std::vector<double>* potential_override) {
    EnergyBreakdown e = energy(phi, params, method, dipolar_phi, potential_override);
    // the nonlocal term, like the contact term, enters mu with double the
    // energy weight
    return e.total + e.interaction + e.dipolar;
}

std::array<double, 3> widths(const ComplexField& psi) {
    const Grid& g = psi.grid();
    std::array<double, 3> w{0.0, 0.0, 0.0};
    const double h = g.cell_volume();
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        double rho = std::norm(psi.values()[i]);
        if (rho == 0.0) continue;
        auto p = g.point(g.node_coords(i));
        for (int d = 0; d < g.dim(); ++d) w[std::size_t(d)] += p[std::size_t(d)] * p[std::size_t(d)] * rho;
    }
    for (double& v : w) v *= h;
    return w;
}

std::array<double, 3> center_of_mass(const ComplexField& psi) {
    const Grid& g = psi.grid();
    std::array<double, 3> c{0.0, 0.0, 0.0};
    const double h = g.cell_volume();
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        double rho = std::norm(psi.values()[i]);
        if (rho == 0.0) continue;
        auto p = g.point(g.node_coords(i));
        for (int d = 0; d < g.dim(); ++d) c[std::size_t(d)] += p[std::size_t(d)] * rho;
    }
    for (double& v : c) v *= h;
    return c;
}

std::array<double, 3> center_of_mass_velocity(const ComplexField& psi) {
    const Grid& g = psi.grid();
    std::array<double, 3> v{0.0, 0.0, 0.0};
    const double h = g.cell_volume();
    for (int d = 0; d < g.dim(); ++d) {
        ComplexField dpsi = sine_derivative(psi, d);
        double acc = 0.0;
        const std::size_t n = g.node_count();
        for (std::size_t i = 0; i < n; ++i)
            acc += std::imag(std::conj(psi.values()[i]) * dpsi.values()[i]);
        v[std::size_t(d)] = h * acc;
    }
    return v;
}

double width_rate(const ComplexField& psi, int axis) {
    const Grid& g = psi.grid();
    if (axis < 0 || axis >= g.dim()) throw InvalidInput("width_rate: axis out of range");
    ComplexField dpsi = sine_derivative(psi, axis);
    double acc = 0.0;
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        auto p = g.point(g.node_coords(i));
        acc += p[std::size_t(axis)] * std::imag(std::conj(psi.values()[i]) * dpsi.values()[i]);
    }
    return 2.0 * g.cell_volume() * acc;
}

double angular_momentum(const ComplexField& psi, double* imag_residual) {
    const Grid& g = psi.grid();
    if (g.dim() < 2) throw InvalidInput("angular_momentum: needs dim >= 2");
    ComplexField dx = sine_derivative(psi, 0);
    ComplexField dy = sine_derivative(psi, 1);
    cdouble acc{0.0, 0.0};
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        auto p = g.point(g.node_coords(i));
        // L_z psi = -i (x d_y - y d_x) psi
        cdouble lz = cdouble{0.0, -1.0} * (p[0] * dy.values()[i] - p[1] * dx.values()[i]);
        acc += std::conj(psi.values()[i]) * lz;
    }
    acc *= g.cell_volume();
    if (imag_residual) *imag_residual = std::imag(acc);
    return std::real(acc);
}

EnergyBreakdown energy_pair(const ComplexFieldPair& psi, const SpinOrbitParams& so,
                            const ModelParams& params) {
    const Grid& g = psi.grid();
    if (g.dim() != params.dim) throw InvalidInput("energy_pair: dimension mismatch");
    EnergyBreakdown e;
    const double kc = params.kinetic_coeff();
    e.kinetic = kinetic_spectral(psi.first, kc) + kinetic_spectral(psi.second, kc);

    const double h = g.cell_volume();
    ComplexField d1 = sine_derivative(psi.first, 0);
    ComplexField d2 = sine_derivative(psi.second, 0);
    double pot = 0.0, inter = 0.0, jj = 0.0;
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        const cdouble a = psi.first.values()[i], b = psi.second.values()[i];
        const double r1 = std::norm(a), r2 = std::norm(b);
        double v = harmonic_potential(g.point(g.node_coords(i)), params.trap, params.dim);
        pot += v * (r1 + r2);
        inter += 0.5 * (so.beta11 * r1 * r1 + 2.0 * so.beta12 * r1 * r2 + so.beta22 * r2 * r2);
        // detuning + gradient coupling + Rabi terms
        jj += 0.5 * so.delta * (r1 - r2);
        jj += std::real(cdouble{0.0, 1.0} * so.k0 *
                        (std::conj(a) * d1.values()[i] - std::conj(b) * d2.values()[i]));
        jj += so.rabi * std::real(a * std::conj(b));
    }
    e.potential = h * pot;
    e.interaction = h * inter;
    e.josephson = h * jj;
    e.sum_parts();
    return e;
}

} // namespace gpe
