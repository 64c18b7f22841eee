#include "gravclock/interferometry.hpp"

#include <cmath>
#include <numbers>

#include "gravclock/errors.hpp"

namespace gravclock {

namespace {

using cd = std::complex<double>;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

cd phase_factor(double angle) { return std::polar(1.0, angle); }

void require_clock(const StateVector& clock_in) {
    if (clock_in.amplitudes.size() != 2) throw DimensionMismatch("clock state must be a qubit");
}

}  // namespace

void ClockModel::validate() const {
    if (!std::isfinite(E_g) || !std::isfinite(E_e)) throw DomainError("clock energies must be finite");
    if (E_e < E_g) throw DomainError("excited energy below ground energy");
}

ClockPhases clock_phases(const ClockModel& clock, double delta_tau, const PhysicalConstants& k) {
    clock.validate();
    if (!std::isfinite(delta_tau)) throw DomainError("delta_tau must be finite");
    return {clock.mean() * delta_tau / k.hbar, clock.gap() * delta_tau / k.hbar};
}

Eigen::Matrix2cd clock_unitary(const ClockModel& clock, double tau, const PhysicalConstants& k) {
    clock.validate();
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Zero();
    u(0, 0) = phase_factor(-clock.E_g * tau / k.hbar);
    u(1, 1) = phase_factor(-clock.E_e * tau / k.hbar);
    return u;
}

Eigen::Matrix2cd relative_evolution(const ClockPhases& phases) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Zero();
    u(0, 0) = phase_factor(-phases.mean + phases.gap);
    u(1, 1) = phase_factor(-phases.mean - phases.gap);
    return u;
}

Eigen::Matrix2cd relative_evolution(const ClockModel& clock, double delta_tau,
                                    const PhysicalConstants& k) {
    return relative_evolution(clock_phases(clock, delta_tau, k));
}

double visibility(const ClockPhases& phases, VisibilityMode mode) {
    const double g = phases.gap;
    if (mode == VisibilityMode::direct) return std::cos(g);
    if (std::abs(g) < 1e-4) {
        const double g2 = g * g;
        return g2 / 2.0 * (1.0 - g2 / 12.0 * (1.0 - g2 / 30.0));
    }
    const double s = std::sin(g / 2.0);
    return 2.0 * s * s;
}

double visibility(const ClockModel& clock, double delta_tau, const PhysicalConstants& k,
                  VisibilityMode mode) {
    return visibility(clock_phases(clock, delta_tau, k), mode);
}

InterferenceResult detection_probabilities(const ClockPhases& phases) {
    InterferenceResult r;
    r.visibility = visibility(phases);
    const double fringe = r.visibility * std::cos(phases.mean);
    r.pr_left = 0.5 * (1.0 + fringe);
    r.pr_right = 0.5 * (1.0 - fringe);
    r.phase_mean = phases.mean;
    r.log10_phase_mean = phases.mean != 0.0 ? std::log10(std::abs(phases.mean)) : -INFINITY;
    return r;
}

InterferenceResult detection_probabilities(const ClockModel& clock, double delta_tau,
                                           const PhysicalConstants& k) {
    auto r = detection_probabilities(clock_phases(clock, delta_tau, k));
    // keep the log phase accurate when the linear value underflows
    if (clock.mean() > 0.0 && delta_tau != 0.0) {
        r.log10_phase_mean = std::log10(clock.mean()) + std::log10(std::abs(delta_tau)) - std::log10(k.hbar);
    }
    return r;
}

Eigen::Matrix2cd beam_splitter() {
    Eigen::Matrix2cd b;
    b << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    return b;
}

StateVector initial_clock_state(cd global_phase) {
    Eigen::VectorXcd a(2);
    a << kInvSqrt2 * global_phase, kInvSqrt2 * global_phase;
    return StateVector::make(std::move(a), {{"C", 2}});
}

StateVector interference_state(const Eigen::Matrix2cd& relative, const StateVector& clock_in) {
    require_clock(clock_in);
    const Eigen::Vector2cd xi = clock_in.amplitudes;
    const Eigen::Vector2cd moved = relative * xi;
    // before the second splitter: (|L> xi + |R> W xi) / sqrt2
    Eigen::Matrix<cd, 2, 2> arms;  // row = path, column = clock
    arms.row(0) = kInvSqrt2 * xi.transpose();
    arms.row(1) = kInvSqrt2 * moved.transpose();
    const Eigen::Matrix<cd, 2, 2> out = beam_splitter() * arms;
    Eigen::VectorXcd a(4);
    a << out(0, 0), out(0, 1), out(1, 0), out(1, 1);
    return StateVector::make(std::move(a), {{"P", 2}, {"C", 2}});
}

InterferenceResult probabilities_from_state(const StateVector& path_clock) {
    if (path_clock.amplitudes.size() != 4) throw DimensionMismatch("expected a path/clock state");
    InterferenceResult r;
    r.pr_left = path_clock.amplitudes.head(2).squaredNorm();
    r.pr_right = path_clock.amplitudes.tail(2).squaredNorm();
    const double v = r.pr_left - r.pr_right;
    r.visibility = v;  // fringe value V cos(mean); callers compare against that
    return r;
}

StateVector gme_state(const Eigen::Matrix2cd& relative, const StateVector& clock_in) {
    require_clock(clock_in);
    const Eigen::Vector2cd xi = clock_in.amplitudes;
    const Eigen::Vector2cd moved = relative * xi;
    Eigen::VectorXcd a(8);
    for (int s = 0; s < 2; ++s) {
        // source 0 puts the shifted clock on the right arm, source 1 on the left
        Eigen::Matrix<cd, 2, 2> arms;
        arms.row(0) = (s == 0 ? xi : moved).transpose();
        arms.row(1) = (s == 0 ? moved : xi).transpose();
        const Eigen::Matrix<cd, 2, 2> out = 0.5 * (beam_splitter() * arms);
        for (int p = 0; p < 2; ++p) {
            for (int c = 0; c < 2; ++c) a(s * 4 + p * 2 + c) = out(p, c);
        }
    }
    return StateVector::make(std::move(a), {{"S", 2}, {"P", 2}, {"C", 2}});
}

StateVector gme_final_state(const ClockPhases& phases, cd global_phase) {
    return gme_state(relative_evolution(phases), initial_clock_state(global_phase));
}

StateVector gme_final_state(const ClockModel& clock, double delta_tau, const PhysicalConstants& k) {
    return gme_final_state(clock_phases(clock, delta_tau, k));
}

double entanglement_entropy_closed(double amplitude, double phase, EntropyBase base) {
    return binary_entropy(0.5 * (1.0 + amplitude * std::cos(phase)), base);
}

double formation_closed(double amplitude, double phase, EntropyBase base) {
    const double s = amplitude * std::sin(phase);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - s * s))), base);
}

GmeResult gme_entanglement(const ClockPhases& phases, EntropyBase base) {
    GmeResult r;
    r.state = gme_final_state(phases);
    const double v = std::cos(phases.gap);
    r.ee_spc = entanglement_entropy_closed(v, phases.mean, base);
    r.ef_sp = formation_closed(v, phases.mean, base);
    const auto rho_sp = reduced_density(r.state, {"S", "P"});
    r.witness = witness_value(rho_sp);
    r.ee_spc_oracle = von_neumann_entropy(reduced_density(r.state, {"S"}), base);
    r.ef_sp_oracle = entanglement_of_formation(rho_sp, base);
    return r;
}

GmeResult gme_entanglement(const ClockModel& clock, double delta_tau, const PhysicalConstants& k,
                           EntropyBase base) {
    return gme_entanglement(clock_phases(clock, delta_tau, k), base);
}

}  // namespace gravclock
