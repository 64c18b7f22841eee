#include "gravclock/detectability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>

#include "gravclock/errors.hpp"

namespace gravclock {

namespace {

double log10_K(double v0, const PhysicalConstants& k) {
    return std::log1p(v0 * v0 / (2.0 * k.c * k.c)) / std::numbers::ln10;
}

// log10 of the phase per unit ell.
double unit_phase_log10(double clock_rate, double w, double v0, const PhysicalConstants& k) {
    return std::log10(clock_rate) + std::log10(16.0) + std::log10(k.G) + std::log10(k.hbar) +
           log10_K(v0, k) - 4.0 * std::log10(k.c) - std::log10(w);
}

bool wants(const std::vector<std::string>& outputs, std::initializer_list<const char*> names) {
    for (const auto& o : outputs) {
        for (const char* n : names) {
            if (o == n) return true;
        }
    }
    return false;
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

void DetectabilityQuery::validate(const PhysicalConstants& k) const {
    if (!(clock_rate > 0.0) || !std::isfinite(clock_rate)) throw DomainError("clock_rate must be positive");
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("w must be positive");
    if (!(v0 >= 0.0 && v0 < k.c)) throw DomainError("v0 must lie in [0, c)");
    if (!std::isfinite(ell_log10)) throw DomainError("ell_log10 must be finite");
    if (ell_sign != 1 && ell_sign != -1) throw DomainError("ell_sign must be +1 or -1");
}

double phase_shift_estimate(const DetectabilityQuery& q, const PhysicalConstants& k) {
    q.validate(k);
    return unit_phase_log10(q.clock_rate, q.w, q.v0, k) + q.ell_log10;
}

double required_ell(double target_phase, double clock_rate, double w, double v0,
                    const PhysicalConstants& k) {
    if (!(target_phase > 0.0) || !std::isfinite(target_phase)) {
        throw DomainError("target phase must be positive");
    }
    DetectabilityQuery q{clock_rate, w, v0, 0.0, 1};
    return std::log10(target_phase) - phase_shift_estimate(q, k);
}

const std::vector<std::string>& sweep_axes() {
    static const std::vector<std::string> axes{"J", "M", "w", "L", "v0", "E_g", "E_e",
                                               "E_g_prime", "E_e_prime", "theta", "delta_tau",
                                               "ell_log10"};
    return axes;
}

const std::vector<std::string>& sweep_outputs() {
    static const std::vector<std::string> outs{
        "delta_tau",        "delta_tau_log10",    "phase_mean_log10", "phase_gap_log10",
        "phase_log10",      "required_ell_log10", "visibility",       "visibility_deficit",
        "pr_left",          "pr_right",           "ee_spc",           "ef_sp",
        "witness",          "qep_visibility",     "qep_xi_phase",     "qep_pr_left",
        "qep_pr_right",     "qep_ee_spc",         "qep_ef_sp"};
    return outs;
}

void validate_sweep(const SweepConfig& cfg) {
    const auto& axes = sweep_axes();
    if (std::find(axes.begin(), axes.end(), cfg.axis) == axes.end()) {
        throw ConfigError("unknown sweep axis '" + cfg.axis + "'");
    }
    const auto& outs = sweep_outputs();
    for (const auto& o : cfg.outputs) {
        if (std::find(outs.begin(), outs.end(), o) == outs.end()) {
            throw ConfigError("unknown sweep output '" + o + "'");
        }
    }
    for (double v : cfg.values) {
        if (!std::isfinite(v)) throw DomainError("sweep values must be finite");
    }
}

std::vector<double> evaluate_row(const SweepBase& fixed, const std::string& axis, double value,
                                 const std::vector<std::string>& outputs) {
    SweepBase b = fixed;
    std::optional<double> dtau_override;
    const auto& k = b.model.constants;
    if (axis == "J") b.model.J = value;
    else if (axis == "M") b.model.M = value;
    else if (axis == "w") b.geometry.w = value;
    else if (axis == "L") b.geometry.L = value;
    else if (axis == "v0") b.geometry.v0 = value;
    else if (axis == "E_g") b.clock.E_g = value;
    else if (axis == "E_e") b.clock.E_e = value;
    else if (axis == "E_g_prime") b.qep.E_g_prime = value;
    else if (axis == "E_e_prime") b.qep.E_e_prime = value;
    else if (axis == "theta") b.qep.theta = value;
    else if (axis == "delta_tau") dtau_override = value;
    else if (axis == "ell_log10") b.model.J = std::pow(10.0, value) * k.hbar;
    else throw ConfigError("unknown sweep axis '" + axis + "'");

    b.clock.validate();
    PhaseBundle pb;
    if (dtau_override) {
        pb.delta_tau = *dtau_override;
        pb.sign = (pb.delta_tau > 0) - (pb.delta_tau < 0);
        pb.log10_delta_tau = pb.sign == 0 ? kNegInf : std::log10(std::abs(pb.delta_tau));
    } else {
        pb = delta_tau_interferometer(b.model, b.geometry, DeltaTauMode::closed_form);
    }
    pb = with_phases(pb, b.clock.mean(), b.clock.gap(), k);
    const ClockPhases phases{pb.phase_mean, pb.phase_gap};

    std::optional<InterferenceResult> probs;
    std::optional<GmeResult> gme;
    std::optional<QepResult> qep;
    if (wants(outputs, {"pr_left", "pr_right"})) probs = detection_probabilities(phases);
    if (wants(outputs, {"ee_spc", "ef_sp", "witness"})) gme = gme_entanglement(phases);
    if (wants(outputs, {"qep_visibility", "qep_xi_phase", "qep_pr_left", "qep_pr_right",
                        "qep_ee_spc", "qep_ef_sp"})) {
        qep = qep_gme_entanglement(b.qep, pb.delta_tau, k);
    }

    const double clock_rate = b.clock.gap() / k.hbar;
    std::vector<double> row;
    row.reserve(outputs.size() + 1);
    row.push_back(value);
    for (const auto& o : outputs) {
        if (o == "delta_tau") row.push_back(pb.delta_tau);
        else if (o == "delta_tau_log10") row.push_back(pb.log10_delta_tau);
        else if (o == "phase_mean_log10") row.push_back(pb.log10_phase_mean);
        else if (o == "phase_gap_log10") row.push_back(pb.log10_phase_gap);
        else if (o == "phase_log10") {
            if (clock_rate > 0.0 && b.model.J != 0.0) {
                DetectabilityQuery q{clock_rate, b.geometry.w, b.geometry.v0,
                                     std::log10(std::abs(b.model.J)) - std::log10(k.hbar),
                                     b.model.J > 0 ? 1 : -1};
                row.push_back(phase_shift_estimate(q, k));
            } else {
                row.push_back(kNegInf);
            }
        } else if (o == "required_ell_log10") {
            row.push_back(clock_rate > 0.0
                              ? required_ell(b.target_phase, clock_rate, b.geometry.w, b.geometry.v0, k)
                              : std::numeric_limits<double>::infinity());
        } else if (o == "visibility") row.push_back(visibility(phases));
        else if (o == "visibility_deficit") row.push_back(visibility(phases, VisibilityMode::deficit));
        else if (o == "pr_left") row.push_back(probs->pr_left);
        else if (o == "pr_right") row.push_back(probs->pr_right);
        else if (o == "ee_spc") row.push_back(gme->ee_spc);
        else if (o == "ef_sp") row.push_back(gme->ef_sp);
        else if (o == "witness") row.push_back(gme->witness);
        else if (o == "qep_visibility") row.push_back(qep->visibility);
        else if (o == "qep_xi_phase") row.push_back(qep->xi_phase);
        else if (o == "qep_pr_left") row.push_back(qep->pr_left);
        else if (o == "qep_pr_right") row.push_back(qep->pr_right);
        else if (o == "qep_ee_spc") row.push_back(qep->ee_spc);
        else if (o == "qep_ef_sp") row.push_back(qep->ef_sp);
        else throw ConfigError("unknown sweep output '" + o + "'");
    }
    return row;
}

Table run_sweep(const SweepConfig& cfg) {
    validate_sweep(cfg);
    Table t;
    t.columns.push_back(cfg.axis);
    t.columns.insert(t.columns.end(), cfg.outputs.begin(), cfg.outputs.end());
    const std::size_t n = cfg.values.size();
    t.rows.resize(n);
    std::vector<std::exception_ptr> errors(n);

    unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                t.rows[i] = evaluate_row(cfg.fixed, cfg.axis, cfg.values[i], cfg.outputs);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return t;
}

}  // namespace gravclock
