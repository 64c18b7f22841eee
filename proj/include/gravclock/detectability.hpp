#pragma once

#include <string>
#include <vector>

#include "gravclock/constants.hpp"
#include "gravclock/interferometry.hpp"
#include "gravclock/propertime.hpp"
#include "gravclock/qep.hpp"

namespace gravclock {

// ell = J / hbar is carried as sign and log10 because lab-relevant values
// reach 1e60.
struct DetectabilityQuery {
    double clock_rate = 1e15;  // dE / hbar, rad/s
    double w = 1e-3;           // m
    double v0 = 0.0;           // m/s
    double ell_log10 = 0.0;
    int ell_sign = 1;

    // Throws DomainError unless clock_rate > 0, w > 0, 0 <= v0 < c and
    // ell_log10 is finite.
    void validate(const PhysicalConstants& k) const;
};

// log10 of (dE/hbar) 16 G (ell hbar) K / (c^4 w), K = 1 + v0^2/(2 c^2).
// The sign of the phase follows ell_sign.
double phase_shift_estimate(const DetectabilityQuery& q, const PhysicalConstants& k);

// log10 ell needed for a phase of target_phase rad. Throws DomainError if
// target_phase <= 0.
double required_ell(double target_phase, double clock_rate, double w, double v0,
                    const PhysicalConstants& k);

// Everything a sweep row needs besides the swept value.
struct SweepBase {
    RotatingMassModel model;
    InterferometerGeometry geometry;
    ClockModel clock;
    QepTestTheory qep;
    double target_phase = 1.0;  // rad, for required_ell_log10
};

struct SweepConfig {
    std::string axis;
    std::vector<double> values;
    SweepBase fixed;
    std::vector<std::string> outputs;
    unsigned workers = 0;  // 0 picks hardware concurrency
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

const std::vector<std::string>& sweep_axes();
const std::vector<std::string>& sweep_outputs();

// Throws ConfigError for unknown axis or output names and DomainError for
// non-finite values. The first column is the axis; rows follow input order.
void validate_sweep(const SweepConfig& cfg);
Table run_sweep(const SweepConfig& cfg);

// One row of run_sweep for a given axis value, in the order of outputs.
std::vector<double> evaluate_row(const SweepBase& fixed, const std::string& axis, double value,
                                 const std::vector<std::string>& outputs);

}  // namespace gravclock
