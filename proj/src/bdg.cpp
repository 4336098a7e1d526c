#include "gpe/bdg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gpe {

namespace {

constexpr double kPi = std::numbers::pi;

SymMatrix matmul(const SymMatrix& a, const SymMatrix& b) {
    const int n = a.n;
    SymMatrix c{n, std::vector<double>(std::size_t(n) * std::size_t(n), 0.0)};
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a.at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

} // namespace

EigenDecomposition jacobi_eigensolve(SymMatrix a, int max_sweeps) {
    const int n = a.n;
    SymMatrix v{n, std::vector<double>(std::size_t(n) * std::size_t(n), 0.0)};
    for (int i = 0; i < n; ++i) v.at(i, i) = 1.0;

    double fro = 0.0;
    for (double x : a.a) fro += x * x;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
        if (off <= 1e-28 * std::max(fro, 1.0)) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double app = a.at(p, p), aqq = a.at(q, q);
                const double theta = 0.5 * (aqq - app) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[std::size_t(i)] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a.at(i, i) < a.at(j, j); });

    EigenDecomposition out;
    out.values.resize(std::size_t(n));
    out.vectors = SymMatrix{n, std::vector<double>(std::size_t(n) * std::size_t(n), 0.0)};
    for (int c = 0; c < n; ++c) {
        out.values[std::size_t(c)] = a.at(order[std::size_t(c)], order[std::size_t(c)]);
        for (int r = 0; r < n; ++r) out.vectors.at(r, c) = v.at(r, order[std::size_t(c)]);
    }
    return out;
}

std::vector<double> BdgOperator::apply(const std::vector<double>& z) const {
    if (int(z.size()) != 2 * n) throw InvalidInput("bdg apply: size mismatch");
    std::vector<double> y(std::size_t(2 * n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += l.at(i, j) * z[std::size_t(j)];
        y[std::size_t(i)] = acc - g[std::size_t(i)] * z[std::size_t(n + i)];
    }
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += l.at(i, j) * z[std::size_t(n + j)];
        y[std::size_t(n + i)] = g[std::size_t(i)] * z[std::size_t(i)] - acc;
    }
    return y;
}

BdgOperator assemble_bdg(const GroundStateResult& ground, const ModelParams& params,
                         double residual_threshold) {
    const Grid& grid = ground.phi.grid();
    if (grid.dim() != 1) throw InvalidInput("assemble_bdg: 1D only");
    if (ground.residual > residual_threshold)
        throw InvalidInput("assemble_bdg: ground state is not converged enough");

    const int m = grid.axis(0).m;
    const int n = m - 1;
    const double len = grid.axis(0).length();
    const double kc = params.kinetic_coeff();

    BdgOperator op{n, SymMatrix{n, std::vector<double>(std::size_t(n) * std::size_t(n), 0.0)},
                   std::vector<double>(std::size_t(n), 0.0),
                   std::vector<double>(std::size_t(n), 0.0), grid, ground.mu};
    double phi_dot = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double v = std::abs(ground.phi.values()[std::size_t(j)]);
        op.phi[std::size_t(j - 1)] = v;
        phi_dot += v * v;
    }
    for (double& v : op.phi) v /= std::sqrt(phi_dot);

    // dense sine-spectral kinetic block: K = (2/m) S diag(kc mu_l^2) S
    std::vector<double> mu2(static_cast<std::size_t>(n));
    for (int l = 1; l <= n; ++l) {
        const double mu = double(l) * kPi / len;
        mu2[std::size_t(l - 1)] = kc * mu * mu;
    }
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            double acc = 0.0;
            for (int l = 1; l <= n; ++l)
                acc += mu2[std::size_t(l - 1)] * std::sin(kPi * double(i) * double(l) / double(m)) *
                       std::sin(kPi * double(j) * double(l) / double(m));
            const double val = 2.0 / double(m) * acc;
            op.l.at(i - 1, j - 1) = val;
            op.l.at(j - 1, i - 1) = val;
        }
    }
    for (int j = 1; j <= n; ++j) {
        const double x = grid.axis(0).node(j);
        const double phi = std::abs(ground.phi.values()[std::size_t(j)]);
        const double rho = phi * phi;
        op.l.at(j - 1, j - 1) += harmonic_potential({x, 0.0, 0.0}, params.trap, 1) +
                                 2.0 * params.beta * rho - ground.mu;
        // the off-diagonal coupling carries the interaction strength: the
        // linearized cubic term splits as beta(2 rho u - phi^2 v)
        op.g[std::size_t(j - 1)] = params.beta * rho;
    }
    return op;
}

BdgSpectrum solve_bdg(const BdgOperator& op) {
    const int n = op.n;
    const double h = op.grid.axis(0).spacing();

    // L± = L ± g
    SymMatrix lminus = op.l, lplus = op.l;
    for (int i = 0; i < n; ++i) {
        lminus.at(i, i) -= op.g[std::size_t(i)];
        lplus.at(i, i) += op.g[std::size_t(i)];
    }

    EigenDecomposition dm = jacobi_eigensolve(lminus);

    // L-^(1/2), clamping the tiny negative rounding of the Goldstone direction
    SymMatrix root{n, std::vector<double>(std::size_t(n) * std::size_t(n), 0.0)};
    for (int c = 0; c < n; ++c) {
        const double lam = std::max(dm.values[std::size_t(c)], 0.0);
        const double s = std::sqrt(lam);
        for (int r = 0; r < n; ++r) root.at(r, c) = dm.vectors.at(r, c) * s;
    }
    // root * vectors^T
    SymMatrix vt{n, std::vector<double>(std::size_t(n) * std::size_t(n), 0.0)};
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) vt.at(r, c) = dm.vectors.at(c, r);
    SymMatrix lhalf = matmul(root, vt);

    SymMatrix core = matmul(matmul(lhalf, lplus), lhalf);
    // symmetrize rounding
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double s = 0.5 * (core.at(i, j) + core.at(j, i));
            core.at(i, j) = s;
            core.at(j, i) = s;
        }
    EigenDecomposition dc = jacobi_eigensolve(core);

    BdgSpectrum out;
    for (int c = 0; c < n; ++c) {
        const double lam = dc.values[std::size_t(c)];
        const double omega = lam > 0.0 ? std::sqrt(lam) : 0.0;
        // d = L-^(1/2) y, s = (1/omega) L+ d
        std::vector<double> y(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) y[std::size_t(r)] = dc.vectors.at(r, c);
        // the Goldstone direction rides the ground state; its eigenvalue
        // floor scales like sqrt(residual), so tag it by overlap as well
        double phi_overlap = 0.0;
        for (int r = 0; r < n; ++r) phi_overlap += y[std::size_t(r)] * op.phi[std::size_t(r)];
        std::vector<double> d(std::size_t(n), 0.0), s(std::size_t(n), 0.0);
        for (int r = 0; r < n; ++r) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += lhalf.at(r, k) * y[std::size_t(k)];
            d[std::size_t(r)] = acc;
        }
        double sd = 0.0;
        if (omega > 0.0) {
            for (int r = 0; r < n; ++r) {
                double acc = 0.0;
                for (int k = 0; k < n; ++k) acc += lplus.at(r, k) * d[std::size_t(k)];
                s[std::size_t(r)] = acc / omega;
            }
            for (int r = 0; r < n; ++r) sd += s[std::size_t(r)] * d[std::size_t(r)];
            sd *= h; // discrete inner product <s, d>_h = ||u||^2 - ||v||^2
        }
        const bool goldstone = std::abs(phi_overlap) > 0.5;
        const bool normalizable = omega > 1e-6 && sd > 1e-8 && !goldstone;
        if (!normalizable) {
            out.excluded.push_back(omega);
            continue;
        }
        const double scale = 1.0 / std::sqrt(sd);
        BdgMode mode;
        mode.omega = omega;
        mode.u.resize(std::size_t(n));
        mode.v.resize(std::size_t(n));
        for (int r = 0; r < n; ++r) {
            const double ss = s[std::size_t(r)] * scale, dd = d[std::size_t(r)] * scale;
            mode.u[std::size_t(r)] = 0.5 * (ss + dd);
            mode.v[std::size_t(r)] = 0.5 * (ss - dd);
        }
        double nu = 0.0, nv = 0.0;
        for (int r = 0; r < n; ++r) {
            nu += mode.u[std::size_t(r)] * mode.u[std::size_t(r)];
            nv += mode.v[std::size_t(r)] * mode.v[std::size_t(r)];
        }
        mode.norm_defect = std::abs(h * (nu - nv) - 1.0);
        out.physical.push_back(std::move(mode));
    }
    std::sort(out.physical.begin(), out.physical.end(),
              [](const BdgMode& a, const BdgMode& b) { return a.omega < b.omega; });
    return out;
}

} // namespace gpe
