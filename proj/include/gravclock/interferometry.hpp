#pragma once

#include <Eigen/Dense>
#include <complex>

#include "gravclock/clockstate.hpp"
#include "gravclock/constants.hpp"

namespace gravclock {

// Two-level clock with rest Hamiltonian E_g |g><g| + E_e |e><e|. Basis
// index 0 is |g>, index 1 is |e>.
struct ClockModel {
    double E_g = 0.0;  // J
    double E_e = 0.0;  // J

    double mean() const { return 0.5 * (E_g + E_e); }
    double gap() const { return E_e - E_g; }
    // Throws DomainError unless E_e >= E_g and both are finite.
    void validate() const;
};

// Dimensionless phases generated by a proper-time difference:
// mean = Ebar dtau / hbar, gap = dE dtau / hbar.
struct ClockPhases {
    double mean = 0.0;
    double gap = 0.0;
};

ClockPhases clock_phases(const ClockModel& clock, double delta_tau, const PhysicalConstants& k);

enum class VisibilityMode { direct, deficit };

struct InterferenceResult {
    double visibility = 1.0;
    double pr_left = 1.0;
    double pr_right = 0.0;
    double phase_mean = 0.0;
    double log10_phase_mean = 0.0;
};

struct GmeResult {
    StateVector state;       // over S, P, C
    double ee_spc = 0.0;     // closed form, entropy of S against PC
    double ef_sp = 0.0;      // closed form, entanglement of formation of SP
    double witness = 0.0;    // from the reduced SP state
    double ee_spc_oracle = 0.0;
    double ef_sp_oracle = 0.0;
};

// diag(exp(-i E_g tau / hbar), exp(-i E_e tau / hbar)).
Eigen::Matrix2cd clock_unitary(const ClockModel& clock, double tau, const PhysicalConstants& k);

// Arm-relative clock evolution
//   exp(-i Ebar dtau/hbar) (exp(+i dE dtau/hbar)|g><g| + exp(-i dE dtau/hbar)|e><e|).
// Each eigenphase sits dE dtau/hbar away from the mean phase. This equals
// U(P_left)^dagger U(P_right) for tau_right - tau_left = 2 dtau up to the
// global phase exp(-i Ebar dtau / hbar).
Eigen::Matrix2cd relative_evolution(const ClockPhases& phases);
Eigen::Matrix2cd relative_evolution(const ClockModel& clock, double delta_tau,
                                    const PhysicalConstants& k);

// cos(gap) or, in deficit mode, 1 - cos(gap) evaluated without cancellation.
double visibility(const ClockPhases& phases, VisibilityMode mode = VisibilityMode::direct);
double visibility(const ClockModel& clock, double delta_tau, const PhysicalConstants& k,
                  VisibilityMode mode = VisibilityMode::direct);

// Pr(L') = (1 + V cos(mean)) / 2, Pr(R') = (1 - V cos(mean)) / 2.
InterferenceResult detection_probabilities(const ClockPhases& phases);
InterferenceResult detection_probabilities(const ClockModel& clock, double delta_tau,
                                           const PhysicalConstants& k);

// Ideal 50/50 beam splitter: |L> -> (|L'> + |R'>)/sqrt2, |R> -> (|L'> - |R'>)/sqrt2.
Eigen::Matrix2cd beam_splitter();

// (|e> + |g>)/sqrt2 times an optional global phase.
StateVector initial_clock_state(std::complex<double> global_phase = 1.0);

// Path/clock state after the second beam splitter for a clock that starts in
// clock_in, takes the identity on the left arm and `relative` on the right.
// Labels P (basis L', R') and C.
StateVector interference_state(const Eigen::Matrix2cd& relative, const StateVector& clock_in);

// Detection probabilities read off interference_state.
InterferenceResult probabilities_from_state(const StateVector& path_clock);

// Source/path/clock state with the source in (|0> + |1>)/sqrt2 steering the
// arm assignment of `relative`. Labels S, P (basis L', R'), C.
StateVector gme_state(const Eigen::Matrix2cd& relative, const StateVector& clock_in);

StateVector gme_final_state(const ClockPhases& phases, std::complex<double> global_phase = 1.0);
StateVector gme_final_state(const ClockModel& clock, double delta_tau, const PhysicalConstants& k);

GmeResult gme_entanglement(const ClockPhases& phases, EntropyBase base = EntropyBase::bits);
GmeResult gme_entanglement(const ClockModel& clock, double delta_tau, const PhysicalConstants& k,
                           EntropyBase base = EntropyBase::bits);

// Closed forms shared with the QEP module: amplitude V and total phase.
double entanglement_entropy_closed(double amplitude, double phase, EntropyBase base);
double formation_closed(double amplitude, double phase, EntropyBase base);

}  // namespace gravclock
