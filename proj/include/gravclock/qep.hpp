#pragma once

#include <Eigen/Dense>

#include "gravclock/clockstate.hpp"
#include "gravclock/constants.hpp"
#include "gravclock/interferometry.hpp"

namespace gravclock {

enum class NewtonianEigenstate { ground, excited };

// Internal Hamiltonians of the test theory. H_N is diagonal in its own
// eigenbasis {|n0>, |n1>} with eigenvalues newtonian.E_g <= newtonian.E_e.
// The frame-dragging Hamiltonian H_f has eigenvalues E_g', E_e' and
// eigenvectors fixed by
//   |n0> = cos(theta)|g'> + exp(i varphi) sin(theta)|e'>.
// All matrices below are written in the H_N eigenbasis.
struct QepTestTheory {
    ClockModel newtonian;
    double E_g_prime = 0.0;  // J
    double E_e_prime = 0.0;  // J
    double theta = 0.0;      // rad, in [0, pi/2]
    double varphi = 0.0;     // rad
    NewtonianEigenstate input = NewtonianEigenstate::ground;
    double commutator_threshold = 0.1;

    // Throws DomainError for theta outside [0, pi/2], unordered or non-finite
    // energies.
    void validate() const;

    Eigen::Matrix2cd h_newtonian() const;
    Eigen::Matrix2cd h_framedrag() const;
    // Columns are |g'> and |e'>.
    Eigen::Matrix2cd framedrag_basis() const;
    // Initial clock state: the selected H_N eigenstate.
    StateVector initial_state() const;

    // ||[H_N, H_f]|| / ||H_N|| in the spectral norm; zero if H_N = 0.
    double commutator_ratio() const;
    bool commutator_warning() const { return commutator_ratio() > commutator_threshold; }

    double mean_prime() const { return 0.5 * (E_g_prime + E_e_prime); }
    double gap_prime() const { return E_e_prime - E_g_prime; }
};

struct QepResult {
    double visibility = 1.0;
    double xi_phase = 0.0;   // xi * dtau / hbar, rad
    double xi = 0.0;         // xi_phase / dtau, rad/s; zero when dtau = 0
    double pr_left = 1.0;
    double pr_right = 0.0;
    double ee_spc = 0.0;
    double ef_sp = 0.0;
    double witness = 0.0;
    double commutator_ratio = 0.0;
    bool commutator_warning = false;
    // State-vector cross-checks of the closed forms.
    double pr_left_oracle = 1.0;
    double ee_spc_oracle = 0.0;
    double ef_sp_oracle = 0.0;
};

// Relative evolution in the H_f eigenbasis with the same convention as
// relative_evolution:
//   exp(-i Ebar' dtau/hbar) (exp(+i dE' dtau/hbar)|g'><g'| + exp(-i dE' dtau/hbar)|e'><e'|).
Eigen::Matrix2cd qep_relative_evolution(const QepTestTheory& tt, double delta_tau,
                                        const PhysicalConstants& k);

// Continuous-branch solution of tan(psi) = c tan(x) with psi(0) = 0. For
// c = 0 the branch is n pi with n the nearest integer to x / pi.
double continuous_atan_branch(double c, double x);

// Visibility sqrt(1 - sin^2 2theta sin^2 x) and xi_phase, x = dE' dtau / hbar.
QepResult qep_visibility(const QepTestTheory& tt, double delta_tau, const PhysicalConstants& k);

// Detection probabilities, plus the same quantity from the state vector.
QepResult qep_probabilities(const QepTestTheory& tt, double delta_tau, const PhysicalConstants& k);

// Entanglement closed forms with the tripartite-state cross-check.
QepResult qep_gme_entanglement(const QepTestTheory& tt, double delta_tau,
                               const PhysicalConstants& k, EntropyBase base = EntropyBase::bits);

// Arm phase operator exp(H_N I_N / i hbar) exp(-H_f I_f / i hbar), so that
// H_f = H_N gives clock_unitary with tau = I_N - I_f.
Eigen::Matrix2cd qep_phase_accumulation(const QepTestTheory& tt, double newtonian_integral,
                                        double framedrag_integral, const PhysicalConstants& k);

}  // namespace gravclock
