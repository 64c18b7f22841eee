#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gravclock/detectability.hpp"
#include "gravclock/errors.hpp"

using namespace gravclock;

namespace {

SweepBase lab_base() {
    SweepBase b;
    b.model.J = 1.0;
    b.geometry = {1e-3, 1.0, 1.0};
    b.clock = {0.0, b.model.constants.hbar * 1e15};
    b.qep.newtonian = b.clock;
    b.qep.E_g_prime = 0.0;
    b.qep.E_e_prime = b.clock.E_e;
    b.qep.theta = 0.2;
    return b;
}

}  // namespace

TEST_CASE("laboratory phase estimate") {
    const PhysicalConstants k;
    DetectabilityQuery q;
    const double log_phase = phase_shift_estimate(q, k);
    // plain arithmetic, no logs of products
    const double direct = std::log10(1e15 * 16.0 * k.G * k.hbar / (std::pow(k.c, 4) * 1e-3));
    CHECK(log_phase == doctest::Approx(direct).epsilon(1e-13));
    CHECK(log_phase == doctest::Approx(-58.856).epsilon(1e-5));
    CHECK(log_phase >= -60.5);
    CHECK(log_phase <= -58.5);

    const double ell = required_ell(1.0, 1e15, 1e-3, 0.0, k);
    CHECK(ell == doctest::Approx(-log_phase).epsilon(1e-14));
    CHECK(ell >= 58.0);
    CHECK(ell <= 61.0);
}

TEST_CASE("round trip and scaling") {
    const PhysicalConstants k;
    for (double target : {1e-3, 0.5, 1.0, 7.0}) {
        for (double w : {1e-4, 1e-3, 2e-2}) {
            const double ell = required_ell(target, 3e14, w, 10.0, k);
            DetectabilityQuery q{3e14, w, 10.0, ell, 1};
            CHECK(phase_shift_estimate(q, k) == doctest::Approx(std::log10(target)).epsilon(1e-13));
            CHECK(required_ell(10 * target, 3e14, w, 10.0, k) - ell == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    DetectabilityQuery a{1e15, 1e-3, 0.0, 0.0, 1};
    DetectabilityQuery b{1e15, 1e-1, 0.0, 0.0, 1};
    CHECK((phase_shift_estimate(b, k) - phase_shift_estimate(a, k)) / 2.0 == doctest::Approx(-1.0).epsilon(1e-12));
    // the kinematic factor shows up even when K - 1 underflows linear arithmetic
    DetectabilityQuery fast{1e15, 1e-3, 3e7, 0.0, 1};
    CHECK(phase_shift_estimate(fast, k) - phase_shift_estimate(a, k) ==
          doctest::Approx(std::log10(1.0 + 9e14 / (2 * k.c * k.c))).epsilon(1e-10));
    DetectabilityQuery neg{1e15, 1e-3, 0.0, 2.0, -1};
    CHECK(phase_shift_estimate(neg, k) == doctest::Approx(phase_shift_estimate(a, k) + 2.0));
}

TEST_CASE("query validation") {
    const PhysicalConstants k;
    CHECK_THROWS_AS(required_ell(0.0, 1e15, 1e-3, 0.0, k), DomainError);
    CHECK_THROWS_AS(required_ell(-1.0, 1e15, 1e-3, 0.0, k), DomainError);
    CHECK_THROWS_AS(required_ell(1.0, 0.0, 1e-3, 0.0, k), DomainError);
    CHECK_THROWS_AS(required_ell(1.0, 1e15, 0.0, 0.0, k), DomainError);
    CHECK_THROWS_AS(required_ell(1.0, 1e15, 1e-3, k.c, k), DomainError);
    CHECK_THROWS_AS((DetectabilityQuery{1e15, 1e-3, 0.0, NAN, 1}.validate(k)), DomainError);
    CHECK_THROWS_AS((DetectabilityQuery{1e15, 1e-3, 0.0, 0.0, 0}.validate(k)), DomainError);
}

TEST_CASE("sweep rows follow input order and match direct evaluation") {
    SweepConfig cfg;
    cfg.axis = "J";
    cfg.fixed = lab_base();
    cfg.outputs = {"delta_tau", "delta_tau_log10", "phase_log10", "visibility", "pr_left", "ee_spc", "qep_visibility"};
    for (int i = 0; i < 40; ++i) cfg.values.push_back(std::pow(10.0, 50.0 + 0.25 * i));
    cfg.workers = 4;
    const auto t = run_sweep(cfg);
    REQUIRE(t.columns.size() == cfg.outputs.size() + 1);
    CHECK(t.columns.front() == "J");
    REQUIRE(t.rows.size() == cfg.values.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(t.rows[i][0] == cfg.values[i]);
        CHECK(t.rows[i] == evaluate_row(cfg.fixed, "J", cfg.values[i], cfg.outputs));
        RotatingMassModel m;
        m.J = cfg.values[i];
        const auto pb = delta_tau_interferometer(m, cfg.fixed.geometry, DeltaTauMode::closed_form);
        CHECK(t.rows[i][1] == pb.delta_tau);
        const auto p = detection_probabilities(cfg.fixed.clock, pb.delta_tau, m.constants);
        CHECK(t.rows[i][5] == doctest::Approx(p.pr_left).epsilon(1e-15));
    }

    // permuting the inputs permutes the rows
    SweepConfig shuffled = cfg;
    std::mt19937 rng(3);
    std::shuffle(shuffled.values.begin(), shuffled.values.end(), rng);
    shuffled.workers = 3;
    const auto s = run_sweep(shuffled);
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        const auto it = std::find(cfg.values.begin(), cfg.values.end(), shuffled.values[i]);
        CHECK(s.rows[i] == t.rows[static_cast<std::size_t>(it - cfg.values.begin())]);
    }

    SweepConfig serial = cfg;
    serial.workers = 1;
    CHECK(run_sweep(serial).rows == t.rows);
}

TEST_CASE("sweep axes") {
    const auto base = lab_base();
    const auto row = evaluate_row(base, "delta_tau", 2e-16, {"delta_tau", "visibility", "visibility_deficit"});
    CHECK(row[1] == 2e-16);
    const double gap = base.clock.gap() * 2e-16 / base.model.constants.hbar;
    CHECK(row[2] == doctest::Approx(std::cos(gap)).epsilon(1e-15));
    CHECK(row[3] == doctest::Approx(2 * std::pow(std::sin(gap / 2), 2)).epsilon(1e-14));

    const auto ell = evaluate_row(base, "ell_log10", 59.0, {"phase_log10"});
    const auto j = evaluate_row(base, "J", std::pow(10.0, 59.0) * base.model.constants.hbar, {"phase_log10"});
    CHECK(ell[1] == doctest::Approx(j[1]).epsilon(1e-13));

    const auto w = evaluate_row(base, "w", 1e-2, {"delta_tau"});
    const auto w0 = evaluate_row(base, "w", 1e-3, {"delta_tau"});
    CHECK(w[1] == doctest::Approx(w0[1] / 10).epsilon(1e-14));

    for (const auto& axis : sweep_axes()) {
        const double v = axis == "theta" ? 0.3 : axis == "E_g" ? 0.0 : axis == "ell_log10" ? 10.0 : 1.0;
        CHECK_NOTHROW(evaluate_row(base, axis, axis == "E_e" || axis == "E_e_prime" ? base.clock.E_e * 2 : v, {}));
    }
}

TEST_CASE("sweep configuration errors") {
    SweepConfig cfg;
    cfg.fixed = lab_base();
    cfg.axis = "colour";
    cfg.values = {1.0};
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
    cfg.axis = "J";
    cfg.outputs = {"delta_tau", "nonsense"};
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
    cfg.outputs = {"delta_tau"};
    cfg.values = {1.0, NAN};
    CHECK_THROWS_AS(run_sweep(cfg), DomainError);

    // a bad row surfaces as the row's own error
    cfg.axis = "E_e";
    cfg.values = {cfg.fixed.clock.E_e, -1.0, cfg.fixed.clock.E_e};
    cfg.workers = 2;
    CHECK_THROWS_AS(run_sweep(cfg), DomainError);
}

TEST_CASE("degenerate sweeps") {
    SweepConfig cfg;
    cfg.fixed = lab_base();
    cfg.axis = "M";
    cfg.values = {1.0, 2.0};
    const auto t = run_sweep(cfg);
    CHECK(t.columns == std::vector<std::string>{"M"});
    CHECK(t.rows.size() == 2);
    CHECK(t.rows[1] == std::vector<double>{2.0});
    cfg.values.clear();
    CHECK(run_sweep(cfg).rows.empty());

    cfg.axis = "J";
    cfg.values = {0.0};
    cfg.outputs = {"delta_tau", "delta_tau_log10", "phase_log10"};
    const auto z = run_sweep(cfg);
    CHECK(z.rows[0][1] == 0.0);
    CHECK(std::isinf(z.rows[0][2]));
    CHECK(std::isinf(z.rows[0][3]));
}
