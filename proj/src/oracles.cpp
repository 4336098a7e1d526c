#include "gpe/oracles.hpp"

#include <cmath>
#include <numbers>

namespace gpe::oracles {

namespace {

constexpr double kPi = std::numbers::pi;

// 15-point Gauss-Legendre rule on [-1,1]
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

double integrate_gl(const std::function<double(double)>& f, double a, double b, double tol) {
    return integrate_rec(f, a, b, gl15(f, a, b), tol, 0);
}

LinearGroundState linear_ground_state(int dim, const TrapParams& trap) {
    trap.validate();
    LinearGroundState out;
    const double gy = trap.gamma_y, gz = trap.gamma_z;
    switch (dim) {
        case 1:
            out.energy = 0.5;
            out.profile = [](const std::array<double, 3>& p) {
                return std::pow(kPi, -0.25) * std::exp(-0.5 * p[0] * p[0]);
            };
            break;
        case 2:
            out.energy = 0.5 * (1.0 + gy);
            out.profile = [gy](const std::array<double, 3>& p) {
                return std::pow(gy, 0.25) / std::sqrt(kPi) *
                       std::exp(-0.5 * (p[0] * p[0] + gy * p[1] * p[1]));
            };
            break;
        case 3:
            out.energy = 0.5 * (1.0 + gy + gz);
            out.profile = [gy, gz](const std::array<double, 3>& p) {
                return std::pow(gy * gz, 0.25) / std::pow(kPi, 0.75) *
                       std::exp(-0.5 * (p[0] * p[0] + gy * p[1] * p[1] + gz * p[2] * p[2]));
            };
            break;
        default:
            throw InvalidInput("linear_ground_state: dim must be 1, 2 or 3");
    }
    out.mu = out.energy;
    return out;
}

TfEstimates tf_estimates(double beta, const TrapParams& trap, int dim) {
    if (!(beta > 0.0)) throw InvalidInput("tf_estimates: beta must be positive");
    trap.validate();
    TfEstimates out;
    const double gy = trap.gamma_y, gz = trap.gamma_z;
    switch (dim) {
        case 1:
            out.mu = 0.5 * std::pow(1.5 * beta, 2.0 / 3.0);
            out.energy = 0.3 * std::pow(1.5 * beta, 2.0 / 3.0);
            break;
        case 2:
            out.mu = std::sqrt(beta * gy / kPi);
            out.energy = (2.0 / 3.0) * std::sqrt(beta * gy / kPi);
            break;
        case 3:
            out.mu = 0.5 * std::pow(15.0 * beta * gy * gz / (4.0 * kPi), 0.4);
            out.energy = (5.0 / 14.0) * std::pow(15.0 * beta * gy * gz / (4.0 * kPi), 0.4);
            break;
        default:
            throw InvalidInput("tf_estimates: dim must be 1, 2 or 3");
    }
    const double r = std::sqrt(2.0 * out.mu);
    out.radii = {r, dim >= 2 ? r / gy : 0.0, dim >= 3 ? r / gz : 0.0};
    return out;
}

WeakInteractionEstimates weak_interaction_estimates(double beta, const TrapParams& trap,
                                                    int dim) {
    LinearGroundState lin = linear_ground_state(dim, trap);
    // |phi0|^4 factorizes over axes; integrate each gaussian factor.
    double c = 1.0;
    const double gammas[3] = {1.0, trap.gamma_y, trap.gamma_z};
    for (int d = 0; d < dim; ++d) {
        const double g = gammas[d];
        c *= integrate_gl(
            [g](double x) { return std::sqrt(g / kPi) * std::sqrt(g / kPi) * std::exp(-2.0 * g * x * x); },
            -12.0 / std::sqrt(g), 12.0 / std::sqrt(g), 1e-13);
    }
    WeakInteractionEstimates out;
    out.quartic_integral = c;
    out.energy = lin.energy + 0.5 * beta * c;
    out.mu = lin.mu + beta * c;
    return out;
}

cdouble bright_soliton(double x, double t, double amplitude, double velocity, double x0,
                       double theta0, double beta) {
    if (!(beta < 0.0)) throw InvalidInput("bright_soliton: beta must be negative");
    if (!(amplitude > 0.0)) throw InvalidInput("bright_soliton: amplitude must be positive");
    const double arg = amplitude * (x - velocity * t - x0);
    const double mag = amplitude / std::sqrt(-beta) / std::cosh(arg);
    const double phase =
        velocity * x - 0.5 * (velocity * velocity - amplitude * amplitude) * t + theta0;
    return mag * cdouble{std::cos(phase), std::sin(phase)};
}

double bright_soliton_mass(double amplitude, double beta) {
    if (!(beta < 0.0)) throw InvalidInput("bright_soliton_mass: beta must be negative");
    return -2.0 * amplitude / beta;
}

double bright_soliton_energy(double amplitude, double velocity, double beta) {
    if (!(beta < 0.0)) throw InvalidInput("bright_soliton_energy: beta must be negative");
    // translational part A v^2 / (-beta) plus the internal energy of the
    // bound profile, which is negative: kinetic (2/3) A^3 / (2(-beta)) plus
    // interaction -(2/3) A^3 / (-beta)
    return amplitude * velocity * velocity / (-beta) -
           amplitude * amplitude * amplitude / (3.0 * (-beta));
}

double dispersion_omega(const std::array<double, 3>& k, int dim, double amplitude, double beta) {
    double k2 = 0.0;
    for (int d = 0; d < dim; ++d) k2 += k[std::size_t(d)] * k[std::size_t(d)];
    return 0.5 * k2 + beta * amplitude * amplitude;
}

double width_closed_form(double t, double e0, double delta0, double delta1) {
    return e0 + (delta0 - e0) * std::cos(2.0 * t) + delta1 * std::sin(2.0 * t);
}

ComState center_of_mass_trajectory(double t, const std::array<double, 3>& x0,
                                   const std::array<double, 3>& w0,
                                   const std::array<double, 3>& lambda, int dim) {
    ComState s;
    for (int d = 0; d < dim; ++d) {
        const double lam = lambda[std::size_t(d)];
        if (!(lam > 0.0)) throw InvalidInput("center_of_mass_trajectory: Lambda must be positive");
        const double w = std::sqrt(lam);
        s.x[std::size_t(d)] = x0[std::size_t(d)] * std::cos(w * t) + w0[std::size_t(d)] / w * std::sin(w * t);
        s.v[std::size_t(d)] = -x0[std::size_t(d)] * w * std::sin(w * t) + w0[std::size_t(d)] * std::cos(w * t);
    }
    return s;
}

double transported_phase(const TransportedSolutionSpec& spec, double t) {
    if (t == 0.0) return spec.g0;
    // gdot = V(x_c) - |xdot_c|^2 / 2; the kinetic part is required for the
    // pointwise residual of the equation to vanish (classical action along
    // the trajectory, not the potential alone)
    auto integrand = [&spec](double s) {
        ComState c = center_of_mass_trajectory(s, spec.x0, spec.w0, spec.lambda, spec.dim);
        double pot = 0.0, kin = 0.0;
        for (int d = 0; d < spec.dim; ++d) {
            pot += spec.lambda[std::size_t(d)] * c.x[std::size_t(d)] * c.x[std::size_t(d)];
            kin += c.v[std::size_t(d)] * c.v[std::size_t(d)];
        }
        return 0.5 * (pot - kin);
    };
    return spec.g0 + integrate_gl(integrand, 0.0, t, 1e-12);
}

cdouble transported_solution(const std::array<double, 3>& x, double t,
                             const TransportedSolutionSpec& spec) {
    ComState c = center_of_mass_trajectory(t, spec.x0, spec.w0, spec.lambda, spec.dim);
    std::array<double, 3> shifted{0.0, 0.0, 0.0};
    double wx = 0.0;
    for (int d = 0; d < spec.dim; ++d) {
        shifted[std::size_t(d)] = x[std::size_t(d)] - c.x[std::size_t(d)];
        wx += c.v[std::size_t(d)] * x[std::size_t(d)];
    }
    const double g = transported_phase(spec, t);
    const double phase = -spec.mu_e * t + wx + g;
    return spec.phi_e(shifted) * cdouble{std::cos(phase), std::sin(phase)};
}

} // namespace gpe::oracles
