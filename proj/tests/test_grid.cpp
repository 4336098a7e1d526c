#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gpe/grid.hpp"
#include "gpe/spectral.hpp"
#include "support/reference.hpp"

using namespace gpe;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grid invariants are enforced") {
    CHECK_THROWS_AS(Grid::make_1d(1.0, 1.0, 16), InvalidInput);  // b > a
    CHECK_THROWS_AS(Grid::make_1d(0.0, 1.0, 6), InvalidInput);   // m >= 8
    CHECK_THROWS_AS(Grid::make_1d(0.0, 1.0, 15), InvalidInput);  // m even
    Grid g = Grid::make_1d(-2.0, 3.0, 10);
    CHECK(g.axis(0).spacing() == doctest::Approx(0.5));
    CHECK(g.axis(0).node(0) == -2.0);
    CHECK(g.axis(0).node(10) == 3.0);
}

TEST_CASE("single sine mode transforms to one coefficient") {
    const int m = 16;
    Grid g = Grid::make_1d(0.0, 1.0, m);
    ComplexField f = ComplexField::sample(g, [&](const std::array<double, 3>& p) {
        return cdouble{std::sin(kPi * p[0]), 0.0};
    });
    SineCoeffs c = sine_forward(f);
    CHECK(std::abs(c.values()[0] - cdouble{m / 2.0, 0.0}) < 1e-12);
    for (int l = 2; l < m; ++l) CHECK(std::abs(c.values()[std::size_t(l - 1)]) < 1e-12);
}

TEST_CASE("zero field gives zero coefficients and back") {
    Grid g = Grid::make_2d(-1.0, 1.0, 16, -1.0, 1.0, 16);
    ComplexField f(g);
    SineCoeffs c = sine_forward(f);
    for (auto& v : c.values()) CHECK(std::abs(v) == 0.0);
    ComplexField back = sine_inverse(c);
    for (auto& v : back.values()) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("unit coefficient synthesizes the first mode") {
    const int m = 16;
    Grid g = Grid::make_1d(0.0, 1.0, m);
    SineCoeffs c(g);
    c.values()[0] = cdouble{m / 2.0, 0.0};
    ComplexField f = sine_inverse(c);
    for (int j = 0; j <= m; ++j) {
        double x = g.axis(0).node(j);
        CHECK(std::abs(f.values()[std::size_t(j)] - cdouble{std::sin(kPi * x), 0.0}) < 1e-13);
    }
}

TEST_CASE("round trip matches identity and the direct-summation oracle") {
    SUBCASE("1d") {
        Grid g = Grid::make_1d(-3.0, 5.0, 64);
        ComplexField f = ref::random_field(g, 7);
        SineCoeffs fast = sine_forward(f);
        SineCoeffs direct = ref::sine_forward_direct(f);
        CHECK(ref::max_abs_diff(fast.values(), direct.values()) < 1e-11);
        CHECK(ref::max_abs_diff_fields(sine_inverse(fast), f) < 1e-12);
    }
    SUBCASE("1d non power of two goes through the same api") {
        Grid g = Grid::make_1d(0.0, 2.0, 48);
        ComplexField f = ref::random_field(g, 11);
        SineCoeffs fast = sine_forward(f);
        SineCoeffs direct = ref::sine_forward_direct(f);
        CHECK(ref::max_abs_diff(fast.values(), direct.values()) < 1e-11);
        CHECK(ref::max_abs_diff_fields(sine_inverse(fast), f) < 1e-12);
    }
    SUBCASE("2d 32x32") {
        Grid g = Grid::make_2d(0.0, 1.0, 32, -2.0, 2.0, 32);
        ComplexField f = ref::random_field(g, 3);
        SineCoeffs fast = sine_forward(f);
        SineCoeffs direct = ref::sine_forward_direct(f);
        CHECK(ref::max_abs_diff(fast.values(), direct.values()) < 1e-11);
        CHECK(ref::max_abs_diff_fields(sine_inverse(fast), f) < 1e-12);
    }
    SUBCASE("3d mixed sizes") {
        Grid g = Grid::make_3d(0.0, 1.0, 16, 0.0, 1.5, 12, -1.0, 1.0, 10);
        ComplexField f = ref::random_field(g, 5);
        SineCoeffs fast = sine_forward(f);
        SineCoeffs direct = ref::sine_forward_direct(f);
        CHECK(ref::max_abs_diff(fast.values(), direct.values()) < 1e-11);
        CHECK(ref::max_abs_diff_fields(sine_inverse(fast), f) < 1e-12);
    }
    SUBCASE("1d large") {
        Grid g = Grid::make_1d(-16.0, 16.0, 1024);
        ComplexField f = ref::random_field(g, 13);
        CHECK(ref::max_abs_diff_fields(sine_inverse(sine_forward(f)), f) < 1e-11);
    }
}

TEST_CASE("parseval consistency between physical and coefficient space") {
    Grid g = Grid::make_2d(-2.0, 2.0, 32, -1.0, 3.0, 24);
    ComplexField f = ref::random_field(g, 21);
    double phys = discrete_norm(f);
    SineCoeffs c = sine_forward(f);
    double acc = 0.0;
    for (auto& v : c.values()) acc += std::norm(v);
    double spec = std::sqrt(coefficient_weight(g) * acc);
    CHECK(phys == doctest::Approx(spec).epsilon(1e-11));
}

TEST_CASE("discrete norm examples") {
    SUBCASE("constant interior value on [0,1], m=10") {
        Grid g = Grid::make_1d(0.0, 1.0, 10);
        ComplexField f = ComplexField::sample(g, [](const std::array<double, 3>&) {
            return cdouble{1.0, 0.0};
        });
        CHECK(discrete_norm(f) * discrete_norm(f) == doctest::Approx(0.9).epsilon(1e-14));
    }
    SUBCASE("zero field") {
        Grid g = Grid::make_1d(0.0, 1.0, 10);
        CHECK(discrete_norm(ComplexField(g)) == 0.0);
    }
    SUBCASE("sampled gaussian has unit norm") {
        Grid g = Grid::make_1d(-16.0, 16.0, 512);
        ComplexField f = ComplexField::sample(g, [](const std::array<double, 3>& p) {
            return cdouble{std::pow(kPi, -0.25) * std::exp(-0.5 * p[0] * p[0]), 0.0};
        });
        CHECK(std::abs(discrete_norm(f) - 1.0) < 1e-10);
    }
}

TEST_CASE("normalize") {
    Grid g = Grid::make_1d(-8.0, 8.0, 64);
    SUBCASE("norm-2 field is halved") {
        ComplexField f = ref::random_field(g, 2);
        double nrm = discrete_norm(f);
        for (auto& v : f.values()) v *= 2.0 / nrm;
        ComplexField n = normalize(f);
        for (std::size_t i = 0; i < f.values().size(); ++i)
            CHECK(std::abs(n.values()[i] - 0.5 * f.values()[i]) < 1e-15);
    }
    SUBCASE("already normalized field is unchanged") {
        ComplexField f = normalize(ref::random_field(g, 4));
        ComplexField n = normalize(f);
        CHECK(ref::max_abs_diff_fields(f, n) < 1e-15);
    }
    SUBCASE("random field gets unit norm") {
        ComplexField n = normalize(ref::random_field(g, 6));
        CHECK(std::abs(discrete_norm(n) - 1.0) < 1e-14);
    }
    SUBCASE("idempotent") {
        ComplexField n1 = normalize(ref::random_field(g, 8));
        ComplexField n2 = normalize(n1);
        CHECK(ref::max_abs_diff_fields(n1, n2) < 1e-15);
    }
    SUBCASE("zero field is rejected with a diagnostic") {
        CHECK_THROWS_AS(normalize(ComplexField(g)), InvalidInput);
    }
}

TEST_CASE("shape mismatches are rejected") {
    Grid g = Grid::make_1d(0.0, 1.0, 16);
    SineCoeffs c(g);
    c.values().resize(5);
    CHECK_THROWS_AS(sine_inverse(c), InvalidInput);
}

TEST_CASE("spectral derivative matches analytic derivative") {
    Grid g = Grid::make_1d(0.0, 2.0, 64);
    ComplexField f = ComplexField::sample(g, [&](const std::array<double, 3>& p) {
        return cdouble{std::sin(3.0 * kPi * p[0] / 2.0), 0.0};
    });
    ComplexField df = sine_derivative(f, 0);
    for (int j = 0; j <= 64; ++j) {
        double x = g.axis(0).node(j);
        double expect = 1.5 * kPi * std::cos(1.5 * kPi * x);
        CHECK(std::abs(df.values()[std::size_t(j)] - cdouble{expect, 0.0}) < 1e-10);
    }
}

TEST_CASE("sine series evaluation interpolates grid values") {
    Grid g = Grid::make_1d(-4.0, 4.0, 64);
    ComplexField f = ComplexField::sample(g, [](const std::array<double, 3>& p) {
        return cdouble{std::exp(-p[0] * p[0]), 0.1 * p[0] * std::exp(-p[0] * p[0])};
    });
    SineCoeffs c = sine_forward(f);
    for (int j = 1; j < 64; j += 7) {
        auto p = g.point({j, 0, 0});
        CHECK(std::abs(eval_sine_series(c, p) - f.values()[std::size_t(j)]) < 1e-11);
    }
}
