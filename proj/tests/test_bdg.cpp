#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpe/bdg.hpp"
#include "gpe/dynamics.hpp"
#include "gpe/observables.hpp"
#include "gpe/spectral.hpp"

using namespace gpe;
namespace {

GroundStateResult tight_ground_state(double beta, const Grid& g) {
    ModelParams p;
    p.dim = 1;
    p.beta = beta;
    GfdnConfig c;
    c.stop_tol = 1e-12;
    c.max_iters = 2000000;
    return solve_ground_state(p, g, c);
}

} // namespace

TEST_CASE("jacobi eigensolver on a known matrix") {
    //  [[2, 1], [1, 2]] -> 1, 3
    SymMatrix a{2, {2.0, 1.0, 1.0, 2.0}};
    EigenDecomposition d = jacobi_eigensolve(a);
    CHECK(d.values[0] == doctest::Approx(1.0));
    CHECK(d.values[1] == doctest::Approx(3.0));
    // eigenvector orthonormality
    double dot = d.vectors.at(0, 0) * d.vectors.at(0, 1) + d.vectors.at(1, 0) * d.vectors.at(1, 1);
    CHECK(std::abs(dot) < 1e-14);
}

TEST_CASE("assembled operator structure") {
    Grid g = Grid::make_1d(-12.0, 12.0, 128);
    GroundStateResult gs = tight_ground_state(50.0, g);
    ModelParams p;
    p.dim = 1;
    p.beta = 50.0;
    BdgOperator op = assemble_bdg(gs, p);
    SUBCASE("diagonal block is symmetric") {
        double asym = 0.0;
        for (int i = 0; i < op.n; ++i)
            for (int j = 0; j < op.n; ++j) asym = std::max(asym, std::abs(op.l.at(i, j) - op.l.at(j, i)));
        CHECK(asym < 1e-12);
    }
    SUBCASE("off-diagonal blocks mirror each other") {
        // apply to (u, 0) and (0, u): lower-left equals minus upper-right
        std::vector<double> z(std::size_t(2 * op.n), 0.0);
        for (int i = 0; i < op.n; ++i) z[std::size_t(i)] = gs.phi.values()[std::size_t(i + 1)].real();
        auto y1 = op.apply(z);
        std::vector<double> z2(std::size_t(2 * op.n), 0.0);
        for (int i = 0; i < op.n; ++i) z2[std::size_t(op.n + i)] = gs.phi.values()[std::size_t(i + 1)].real();
        auto y2 = op.apply(z2);
        for (int i = 0; i < op.n; ++i) {
            const double coupling_down = y1[std::size_t(op.n + i)]; // g u
            const double coupling_up = y2[std::size_t(i)];          // -g u
            CHECK(coupling_down == doctest::Approx(-coupling_up).epsilon(1e-12));
        }
    }
    SUBCASE("unconverged states are rejected") {
        GroundStateResult sloppy = gs;
        sloppy.residual = 1.0;
        CHECK_THROWS_AS(assemble_bdg(sloppy, p), InvalidInput);
    }
    SUBCASE("interaction-free operator annihilates the ground state direction") {
        GroundStateResult gs0 = tight_ground_state(0.0, g);
        ModelParams p0;
        p0.dim = 1;
        BdgOperator op0 = assemble_bdg(gs0, p0);
        std::vector<double> z(std::size_t(2 * op0.n), 0.0);
        for (int i = 0; i < op0.n; ++i) z[std::size_t(i)] = gs0.phi.values()[std::size_t(i + 1)].real();
        auto y = op0.apply(z);
        double h = g.axis(0).spacing();
        double norm = 0.0;
        for (double v : y) norm += v * v;
        CHECK(std::sqrt(h * norm) < 1e-8);
    }
}

TEST_CASE("interaction-free spectrum is the oscillator ladder") {
    // With beta = 0 the diagonal block is H - mu and the physical
    // frequencies are the oscillator gaps above the ground level: 1, 2, ...
    // (dense eigensolve of H below confirms the ladder spacing on this
    // discretization independently of the linearization code).
    Grid g = Grid::make_1d(-16.0, 16.0, 256);
    GroundStateResult gs = tight_ground_state(0.0, g);
    ModelParams p;
    p.dim = 1;
    BdgOperator op = assemble_bdg(gs, p);

    // independent check of the discrete oscillator eigenvalues: L + mu = H
    SymMatrix h_mat = op.l;
    for (int i = 0; i < op.n; ++i) h_mat.at(i, i) += gs.mu;
    EigenDecomposition osc = jacobi_eigensolve(h_mat);
    for (int k = 0; k < 6; ++k)
        CHECK(osc.values[std::size_t(k)] == doctest::Approx(k + 0.5).epsilon(1e-9));

    BdgSpectrum spec = solve_bdg(op);
    REQUIRE(spec.physical.size() >= 5);
    for (int k = 0; k < 5; ++k)
        CHECK(spec.physical[std::size_t(k)].omega == doctest::Approx(double(k + 1)).epsilon(1e-8));
    SUBCASE("hole amplitudes vanish") {
        const double h = g.axis(0).spacing();
        for (int k = 0; k < 5; ++k) {
            double nv = 0.0;
            for (double v : spec.physical[std::size_t(k)].v) nv += v * v;
            CHECK(std::sqrt(h * nv) < 1e-10);
        }
    }
    SUBCASE("zero mode was excluded") { CHECK(spec.excluded.size() >= 1); }
}

TEST_CASE("interacting spectrum") {
    Grid g = Grid::make_1d(-16.0, 16.0, 256);
    GroundStateResult gs = tight_ground_state(100.0, g);
    ModelParams p;
    p.dim = 1;
    p.beta = 100.0;
    BdgOperator op = assemble_bdg(gs, p);
    BdgSpectrum spec = solve_bdg(op);
    REQUIRE(spec.physical.size() >= 3);

    SUBCASE("dipole mode sits at the trap frequency") {
        CHECK(spec.physical[0].omega == doctest::Approx(1.0).epsilon(0.01));
    }
    SUBCASE("positive normalization holds") {
        for (int k = 0; k < 3; ++k) CHECK(spec.physical[std::size_t(k)].norm_defect < 1e-8);
    }
    SUBCASE("block-operator residual and the mirror eigenvalue") {
        const double h = g.axis(0).spacing();
        for (int k = 0; k < 3; ++k) {
            const BdgMode& m = spec.physical[std::size_t(k)];
            std::vector<double> z(std::size_t(2 * op.n));
            for (int i = 0; i < op.n; ++i) {
                z[std::size_t(i)] = m.u[std::size_t(i)];
                z[std::size_t(op.n + i)] = m.v[std::size_t(i)];
            }
            auto y = op.apply(z);
            double res = 0.0;
            for (int i = 0; i < 2 * op.n; ++i) {
                double d = y[std::size_t(i)] - m.omega * z[std::size_t(i)];
                res += d * d;
            }
            CHECK(std::sqrt(h * res) < 1e-7);
            // partner (v, u) belongs to -omega
            std::vector<double> zp(std::size_t(2 * op.n));
            for (int i = 0; i < op.n; ++i) {
                zp[std::size_t(i)] = m.v[std::size_t(i)];
                zp[std::size_t(op.n + i)] = m.u[std::size_t(i)];
            }
            auto yp = op.apply(zp);
            double resp = 0.0;
            for (int i = 0; i < 2 * op.n; ++i) {
                double d = yp[std::size_t(i)] + m.omega * zp[std::size_t(i)];
                resp += d * d;
            }
            CHECK(std::sqrt(h * resp) < 1e-7);
        }
    }
    SUBCASE("frequencies are real") {
        for (const auto& m : spec.physical) CHECK(m.omega_imag == 0.0);
    }
}

TEST_CASE("kick cross-check: the dipole mode is the center-of-mass motion") {
    ModelParams p;
    p.dim = 1;
    p.beta = 100.0;
    Grid g = Grid::make_1d(-16.0, 16.0, 256);
    GroundStateResult gs = tight_ground_state(100.0, g);
    SineCoeffs coeffs = sine_forward(gs.phi);
    ComplexField psi0 = ComplexField::sample(g, [&](const std::array<double, 3>& x) {
        std::array<double, 3> q{x[0] - 0.02, 0.0, 0.0};
        if (q[0] <= g.axis(0).a || q[0] >= g.axis(0).b) return cdouble{0.0, 0.0};
        return eval_sine_series(coeffs, q);
    });
    EvolveConfig ec;
    ec.tau = 2e-3;
    ec.t_final = 4.0 * 3.14159265358979;
    ec.stride = 5;
    Trajectory tr = evolve(psi0, p, ec);
    // frequency from zero crossings of x_c
    std::vector<double> zeros;
    for (std::size_t i = 1; i < tr.records.size(); ++i) {
        double a = tr.records[i - 1].xc[0], b = tr.records[i].xc[0];
        if ((a < 0) == (b < 0)) continue;
        zeros.push_back(tr.records[i - 1].t +
                        (tr.records[i].t - tr.records[i - 1].t) * (-a) / (b - a));
    }
    REQUIRE(zeros.size() >= 3);
    const double period = 2.0 * (zeros.back() - zeros.front()) / double(zeros.size() - 1);
    const double freq = 2.0 * 3.14159265358979 / period;

    BdgSpectrum spec = solve_bdg(assemble_bdg(gs, p));
    CHECK(freq == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(std::abs(spec.physical[0].omega - freq) < 0.01);
}

TEST_CASE("small perturbation along a mode oscillates at its frequency") {
    ModelParams p;
    p.dim = 1;
    p.beta = 50.0;
    Grid g = Grid::make_1d(-12.0, 12.0, 128);
    GroundStateResult gs = tight_ground_state(50.0, g);
    BdgSpectrum spec = solve_bdg(assemble_bdg(gs, p));
    REQUIRE(spec.physical.size() >= 2);
    const BdgMode& mode = spec.physical[1]; // breathing-type mode
    const double omega = mode.omega;

    ComplexField psi0 = gs.phi;
    const double amp = 1e-4;
    for (int i = 0; i < int(mode.u.size()); ++i) {
        // psi = phi + amp (u - conj(v)) at t = 0
        psi0.values()[std::size_t(i + 1)] +=
            amp * cdouble{mode.u[std::size_t(i)] - mode.v[std::size_t(i)], 0.0};
    }
    EvolveConfig ec;
    ec.tau = 1e-3;
    ec.t_final = 3.0 * 2.0 * 3.14159265358979 / omega;
    ec.stride = 5;
    Trajectory tr = evolve(psi0, p, ec);
    // width oscillation frequency via zero crossings around the mean
    std::vector<double> w;
    for (const auto& rec : tr.records) w.push_back(rec.widths[0]);
    double mean = 0.0;
    for (double x : w) mean += x;
    mean /= double(w.size());
    std::vector<double> zeros;
    for (std::size_t i = 1; i < w.size(); ++i) {
        double a = w[i - 1] - mean, b = w[i] - mean;
        if ((a < 0) == (b < 0)) continue;
        zeros.push_back(tr.records[i - 1].t +
                        (tr.records[i].t - tr.records[i - 1].t) * (-a) / (b - a));
    }
    REQUIRE(zeros.size() >= 3);
    const double period = 2.0 * (zeros.back() - zeros.front()) / double(zeros.size() - 1);
    const double measured = 2.0 * 3.14159265358979 / period;
    CHECK(std::abs(measured - omega) / omega < 0.02);
}

TEST_CASE("domain doubling leaves the low modes in place (reported)") {
    ModelParams p;
    p.dim = 1;
    p.beta = 20.0;
    Grid g1 = Grid::make_1d(-8.0, 8.0, 128);
    Grid g2 = Grid::make_1d(-16.0, 16.0, 256);
    BdgSpectrum s1 = solve_bdg(assemble_bdg(tight_ground_state(20.0, g1), p));
    BdgSpectrum s2 = solve_bdg(assemble_bdg(tight_ground_state(20.0, g2), p));
    for (int k = 0; k < 5; ++k) {
        const double a = s1.physical[std::size_t(k)].omega;
        const double b = s2.physical[std::size_t(k)].omega;
        MESSAGE("mode ", k, ": ", a, " vs ", b);
        CHECK(std::abs(a - b) < 1e-3);
    }
}
