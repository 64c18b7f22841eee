#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gravclock/errors.hpp"
#include "gravclock/spacetime.hpp"

using namespace gravclock;

namespace {

constexpr double kPi = std::numbers::pi;

// -g_{mu nu} xdot^mu xdot^nu / c^2 with xdot = (c, dr, dtheta, dphi), every
// entry rebuilt here from the line element.
double full_contraction_rate(double c, double G, double M, double J, const SpacetimePoint& p,
                             const CoordinateVelocity& v) {
    const double u = 2.0 * G * M / (c * c * p.r);
    const double s2 = std::sin(p.theta) * std::sin(p.theta);
    const double gtt = -(1.0 - u);
    const double grr = 1.0 + u;
    const double gtp = -4.0 * G * J / (c * c * c * p.r) * s2;
    const double xdot[4] = {c, v.dr, v.dtheta, v.dphi};
    const double g[4][4] = {{gtt, 0, 0, gtp},
                            {0, grr, 0, 0},
                            {0, 0, p.r * p.r, 0},
                            {gtp, 0, 0, p.r * p.r * s2}};
    double sum = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) sum += g[a][b] * xdot[a] * xdot[b];
    }
    return std::sqrt(-sum / (c * c));
}

}  // namespace

TEST_CASE("flat components when the source is absent") {
    RotatingMassModel m;
    for (double r : {1e-3, 1.0, 7.5e4}) {
        for (double th : {0.0, 0.3, kPi / 2, kPi}) {
            const auto g = metric_at(m, {0.0, r, th, 1.1});
            CHECK(g.g_tt == -1.0);
            CHECK(g.g_rr == 1.0);
            CHECK(g.g_thth == r * r);
            CHECK(g.g_phph == doctest::Approx(r * r * std::sin(th) * std::sin(th)).epsilon(1e-15));
            CHECK(g.h_tphi == 0.0);
        }
    }
}

TEST_CASE("frame-dragging entry in SI units") {
    RotatingMassModel m;
    m.J = 1.0;
    const auto g = metric_at(m, {0.0, 1.0, kPi / 2, 0.0});
    const double c = 2.99792458e8;
    const double expected = -4.0 * 6.67430e-11 / (c * c * c);
    CHECK(g.h_tphi == doctest::Approx(expected).epsilon(1e-14));
    CHECK(g.h_tphi == doctest::Approx(-9.907e-36).epsilon(1e-3));

    m.J = -1.0;
    const auto flipped = metric_at(m, {0.0, 1.0, kPi / 2, 0.0});
    CHECK(flipped.h_tphi == -g.h_tphi);
    CHECK(flipped.g_tt == g.g_tt);
    CHECK(flipped.g_rr == g.g_rr);
}

TEST_CASE("antisymmetry of h_tphi in J at random points") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ur(0.5, 50.0);
    std::uniform_real_distribution<double> ut(0.0, kPi);
    RotatingMassModel a;
    a.constants = PhysicalConstants::geometric();
    a.M = 0.01;
    a.J = 0.37;
    RotatingMassModel b = a;
    b.J = -a.J;
    for (int i = 0; i < 50; ++i) {
        const SpacetimePoint p{0.0, ur(rng), ut(rng), 0.0};
        CHECK(metric_at(a, p).h_tphi == -metric_at(b, p).h_tphi);
    }
}

TEST_CASE("proper-time rate special cases") {
    RotatingMassModel m;
    CHECK(proper_time_rate(m, {0, 1, kPi / 2, 0}, {}) == 1.0);
    const double c = m.constants.c;
    CHECK(proper_time_rate(m, {0, 1, kPi / 2, 0}, {0.6 * c, 0, 0}) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK_THROWS_AS(proper_time_rate(m, {0, 1, kPi / 2, 0}, {c, 0, 0}), NotTimelike);
    CHECK_THROWS_AS(proper_time_rate(m, {0, 1, kPi / 2, 0}, {2 * c, 0, 0}), NotTimelike);
}

TEST_CASE("proper-time rate agrees with the full metric contraction") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RotatingMassModel m;
    m.constants = {3.0, 0.7, 1.0};
    m.M = 2.0;
    m.J = 1.5;
    for (int i = 0; i < 200; ++i) {
        const SpacetimePoint p{0.0, 5.0 + 4.0 * u(rng), kPi / 2 + 1.2 * u(rng), kPi * u(rng)};
        const CoordinateVelocity v{0.5 * u(rng), 0.05 * u(rng), 0.05 * u(rng)};
        const double expected = full_contraction_rate(3.0, 0.7, 2.0, 1.5, p, v);
        CHECK(proper_time_rate(m, p, v) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("radicand stays in (0, 1] for bound weak-field motion") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RotatingMassModel m;
    m.constants = PhysicalConstants::geometric();
    m.M = 0.05;
    m.J = 0.01;
    for (int i = 0; i < 500; ++i) {
        const SpacetimePoint p{0.0, 2.0 + 10.0 * (1.0 + u(rng)), kPi / 2 + 0.5 * u(rng), kPi * u(rng)};
        const double vr = 0.3 * u(rng);
        const double vt = 0.3 * u(rng) / p.r;
        const CoordinateVelocity v{vr, 0.0, vt};
        const double q = proper_time_rate_squared(m, p, v);
        CHECK(q > 0.0);
        CHECK(q <= 1.0);
    }
}

TEST_CASE("weak-field guard and domain errors") {
    RotatingMassModel m;
    m.constants = PhysicalConstants::geometric();
    m.M = 1.0;
    CHECK_THROWS_AS(metric_at(m, {0, 4.0, kPi / 2, 0}), WeakFieldViolation);
    CHECK_NOTHROW(metric_at(m, {0, 4.0001, kPi / 2, 0}));
    m.weak_field_threshold = 0.1;
    CHECK_THROWS_AS(metric_at(m, {0, 10.0, kPi / 2, 0}), WeakFieldViolation);
    CHECK_THROWS_AS(metric_at(m, {0, 0.0, kPi / 2, 0}), DomainError);
    CHECK_THROWS_AS(metric_at(m, {0, -1.0, kPi / 2, 0}), DomainError);
    CHECK_THROWS_AS(metric_at(m, {0, 100.0, 4.0, 0}), DomainError);
}

TEST_CASE("energy ratio") {
    RotatingMassModel m;
    CHECK(energy_ratio(m, {0, 1, kPi / 2, 0}, 0.0) == 1.0);
    const double v0 = 1e5;
    const double c = m.constants.c;
    CHECK(energy_ratio(m, {0, 1e9, kPi / 2, 0}, v0) == doctest::Approx(1.0 + v0 * v0 / (2 * c * c)).epsilon(1e-16));
    m.constants = PhysicalConstants::geometric();
    m.M = 0.1;
    CHECK(energy_ratio(m, {0, 10, kPi / 2, 0}, 0.2) == doctest::Approx(1.0 + 0.02 - 0.01).epsilon(1e-15));
}

TEST_CASE("perturbation validity ratio") {
    RotatingMassModel m;
    const SpacetimePoint p{0, 1e-3, kPi / 2, 0};
    const CoordinateVelocity v{0, 0, 1e2 / 1e-3};
    CHECK(perturbation_validity(m, p, v) == 0.0);

    m.J = 1.0;
    const double base = perturbation_validity(m, p, v);
    for (double j : {2.0, 4.0}) {
        m.J = j;
        CHECK(perturbation_validity(m, p, v) == doctest::Approx(j * base).epsilon(1e-14));
    }
    m.M = 1.0;
    m.J = 1.0;
    const double lab = perturbation_validity(m, p, v);
    MESSAGE("laboratory perturbation ratio: " << lab);
    CHECK(lab < 1e-20);
    CHECK(lab > 0.0);
}
