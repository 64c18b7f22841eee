#include "gravclock/qep.hpp"

#include <cmath>
#include <numbers>

#include "gravclock/errors.hpp"

namespace gravclock {

namespace {

using cd = std::complex<double>;

// cos(2 theta) as seen by the occupied H_N eigenstate.
double mixing_cos(const QepTestTheory& tt) {
    const double c = std::cos(2.0 * tt.theta);
    return tt.input == NewtonianEigenstate::ground ? c : -c;
}

double spectral_norm(const Eigen::Matrix2cd& m) {
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
    return svd.singularValues()(0);
}

Eigen::Matrix2cd in_framedrag_basis(const QepTestTheory& tt, cd on_g, cd on_e) {
    const Eigen::Matrix2cd b = tt.framedrag_basis();
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
    d(0, 0) = on_g;
    d(1, 1) = on_e;
    return b * d * b.adjoint();
}

}  // namespace

void QepTestTheory::validate() const {
    newtonian.validate();
    if (!std::isfinite(E_g_prime) || !std::isfinite(E_e_prime)) {
        throw DomainError("frame-dragging energies must be finite");
    }
    if (E_e_prime < E_g_prime) throw DomainError("E_e' below E_g'");
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0)) {
        throw DomainError("theta must lie in [0, pi/2]");
    }
    if (!std::isfinite(varphi)) throw DomainError("varphi must be finite");
}

Eigen::Matrix2cd QepTestTheory::framedrag_basis() const {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    Eigen::Matrix2cd b;
    b(0, 0) = ct;
    b(1, 0) = -std::polar(st, varphi);
    b(0, 1) = std::polar(st, -varphi);
    b(1, 1) = ct;
    return b;
}

Eigen::Matrix2cd QepTestTheory::h_newtonian() const {
    Eigen::Matrix2cd h = Eigen::Matrix2cd::Zero();
    h(0, 0) = newtonian.E_g;
    h(1, 1) = newtonian.E_e;
    return h;
}

Eigen::Matrix2cd QepTestTheory::h_framedrag() const {
    return in_framedrag_basis(*this, E_g_prime, E_e_prime);
}

StateVector QepTestTheory::initial_state() const {
    return StateVector::basis("C", 2, input == NewtonianEigenstate::ground ? 0 : 1);
}

double QepTestTheory::commutator_ratio() const {
    const Eigen::Matrix2cd hn = h_newtonian();
    const Eigen::Matrix2cd hf = h_framedrag();
    const double denom = spectral_norm(hn);
    const double num = spectral_norm(hn * hf - hf * hn);
    // H_N = 0 commutes with everything
    if (denom == 0.0) return 0.0;
    return num / denom;
}

Eigen::Matrix2cd qep_relative_evolution(const QepTestTheory& tt, double delta_tau,
                                        const PhysicalConstants& k) {
    tt.validate();
    const double mean = tt.mean_prime() * delta_tau / k.hbar;
    const double gap = tt.gap_prime() * delta_tau / k.hbar;
    return in_framedrag_basis(tt, std::polar(1.0, -mean + gap), std::polar(1.0, -mean - gap));
}

double continuous_atan_branch(double c, double x) {
    const double n = std::floor(x / std::numbers::pi + 0.5);
    const double y = x - n * std::numbers::pi;
    // c = 0 is taken as the limit from above: psi jumps by pi where cos x
    // changes sign, which keeps V cos(mean - psi) equal to cos x cos(mean).
    if (c == 0.0) return n * std::numbers::pi;
    const double sgn = c > 0.0 ? 1.0 : -1.0;
    return std::atan2(c * std::sin(y), std::cos(y)) + sgn * n * std::numbers::pi;
}

QepResult qep_visibility(const QepTestTheory& tt, double delta_tau, const PhysicalConstants& k) {
    tt.validate();
    QepResult r;
    const double x = tt.gap_prime() * delta_tau / k.hbar;
    const double c = mixing_cos(tt);
    // 1 - sin^2(2 theta) sin^2 x = cos^2 x + cos^2(2 theta) sin^2 x
    r.visibility = std::min(1.0, std::hypot(std::cos(x), c * std::sin(x)));
    r.xi_phase = -continuous_atan_branch(c, x);
    r.xi = delta_tau != 0.0 ? r.xi_phase / delta_tau : 0.0;
    r.commutator_ratio = tt.commutator_ratio();
    r.commutator_warning = r.commutator_ratio > tt.commutator_threshold;
    return r;
}

QepResult qep_probabilities(const QepTestTheory& tt, double delta_tau, const PhysicalConstants& k) {
    QepResult r = qep_visibility(tt, delta_tau, k);
    const double phase = tt.mean_prime() * delta_tau / k.hbar + r.xi_phase;
    const double fringe = r.visibility * std::cos(phase);
    r.pr_left = 0.5 * (1.0 + fringe);
    r.pr_right = 0.5 * (1.0 - fringe);
    const auto st = interference_state(qep_relative_evolution(tt, delta_tau, k), tt.initial_state());
    r.pr_left_oracle = probabilities_from_state(st).pr_left;
    return r;
}

QepResult qep_gme_entanglement(const QepTestTheory& tt, double delta_tau,
                               const PhysicalConstants& k, EntropyBase base) {
    QepResult r = qep_probabilities(tt, delta_tau, k);
    const double phase = tt.mean_prime() * delta_tau / k.hbar + r.xi_phase;
    r.ee_spc = entanglement_entropy_closed(r.visibility, phase, base);
    r.ef_sp = formation_closed(r.visibility, phase, base);
    const auto psi = gme_state(qep_relative_evolution(tt, delta_tau, k), tt.initial_state());
    const auto rho_sp = reduced_density(psi, {"S", "P"});
    r.witness = witness_value(rho_sp);
    r.ee_spc_oracle = von_neumann_entropy(reduced_density(psi, {"S"}), base);
    r.ef_sp_oracle = entanglement_of_formation(rho_sp, base);
    return r;
}

Eigen::Matrix2cd qep_phase_accumulation(const QepTestTheory& tt, double newtonian_integral,
                                        double framedrag_integral, const PhysicalConstants& k) {
    tt.validate();
    Eigen::Matrix2cd un = Eigen::Matrix2cd::Zero();
    un(0, 0) = std::polar(1.0, -tt.newtonian.E_g * newtonian_integral / k.hbar);
    un(1, 1) = std::polar(1.0, -tt.newtonian.E_e * newtonian_integral / k.hbar);
    const Eigen::Matrix2cd uf =
        in_framedrag_basis(tt, std::polar(1.0, tt.E_g_prime * framedrag_integral / k.hbar),
                           std::polar(1.0, tt.E_e_prime * framedrag_integral / k.hbar));
    return un * uf;
}

}  // namespace gravclock
