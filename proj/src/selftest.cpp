#include "gravclock/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gravclock/clockstate.hpp"
#include "gravclock/interferometry.hpp"
#include "gravclock/qep.hpp"

namespace gravclock {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SuiteResult finish(std::string name, double err, double tol) {
    return {std::move(name), err, tol, err <= tol};
}

StateVector random_qubit(std::mt19937_64& rng, const std::string& name) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd a(2);
    a << std::complex<double>(g(rng), g(rng)), std::complex<double>(g(rng), g(rng));
    a.normalize();
    return StateVector::make(std::move(a), {{name, 2}});
}

}  // namespace

std::vector<SuiteResult> run_selftest(std::uint64_t seed) {
    std::vector<SuiteResult> out;
    const PhysicalConstants k = PhysicalConstants::geometric();

    // 10 x 10 phase grid for the visibility experiment and GME state.
    double err_prob = 0.0;
    double err_ee = 0.0;
    double err_ef = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const ClockPhases ph{kTwoPi * j / 10.0, kTwoPi * i / 10.0};
            const auto closed = detection_probabilities(ph);
            const auto st = probabilities_from_state(interference_state(relative_evolution(ph), initial_clock_state()));
            err_prob = std::max({err_prob, std::abs(closed.pr_left - st.pr_left),
                                 std::abs(closed.pr_right - st.pr_right)});
            const auto g = gme_entanglement(ph);
            err_ee = std::max(err_ee, std::abs(g.ee_spc - g.ee_spc_oracle));
            err_ef = std::max(err_ef, std::abs(g.ef_sp - g.ef_sp_oracle));
        }
    }
    out.push_back(finish("probabilities_grid", err_prob, 1e-12));
    out.push_back(finish("entropy_grid", err_ee, 1e-10));
    out.push_back(finish("formation_grid", err_ef, 1e-10));

    // Random QEP theories: closed forms against the constructed states.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double err_qp = 0.0;
    double err_qe = 0.0;
    double err_qv = 0.0;
    for (int n = 0; n < 100; ++n) {
        QepTestTheory tt;
        tt.newtonian = {0.0, 1.0};
        tt.E_g_prime = -2.0 + 4.0 * u01(rng);
        tt.E_e_prime = tt.E_g_prime + 3.0 * u01(rng);
        tt.theta = std::numbers::pi / 2.0 * u01(rng);
        tt.varphi = kTwoPi * u01(rng);
        tt.input = u01(rng) < 0.5 ? NewtonianEigenstate::ground : NewtonianEigenstate::excited;
        const double dtau = -5.0 + 10.0 * u01(rng);
        const auto r = qep_gme_entanglement(tt, dtau, k);
        err_qp = std::max(err_qp, std::abs(r.pr_left - r.pr_left_oracle));
        err_qe = std::max({err_qe, std::abs(r.ee_spc - r.ee_spc_oracle), std::abs(r.ef_sp - r.ef_sp_oracle)});
        const Eigen::Vector2cd chi = tt.initial_state().amplitudes;
        const double overlap = std::abs(chi.dot(qep_relative_evolution(tt, dtau, k) * chi));
        err_qv = std::max(err_qv, std::abs(overlap - r.visibility));
    }
    out.push_back(finish("qep_probabilities", err_qp, 1e-10));
    out.push_back(finish("qep_entanglement", err_qe, 1e-10));
    out.push_back(finish("qep_visibility_overlap", err_qv, 1e-12));

    // Witness on product states of source and path never exceeds 1.
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const std::vector<StateVector> parts{random_qubit(rng, "S"), random_qubit(rng, "P")};
        worst = std::max(worst, witness_value(DensityMatrix::pure(tensor_state(parts))));
    }
    out.push_back(finish("witness_separable", std::max(0.0, worst - 1.0), 1e-9));
    return out;
}

}  // namespace gravclock
