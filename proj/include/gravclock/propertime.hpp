#pragma once

#include <functional>
#include <vector>

#include "gravclock/quadrature.hpp"
#include "gravclock/spacetime.hpp"

namespace gravclock {

struct PathSample {
    SpacetimePoint point;
    CoordinateVelocity velocity;
};

// A timelike trajectory sampled in coordinate time. Samples are ordered by
// strictly increasing t; start and end repeat the endpoint events.
struct PathSpec {
    std::vector<PathSample> samples;
    SpacetimePoint start;
    SpacetimePoint end;

    // Throws DomainError if fewer than two samples, t is not strictly
    // increasing, or the endpoints disagree with the first/last samples.
    void validate() const;
};

// A trajectory given as a function of coordinate time, used where the
// quadrature needs to refine the sampling itself.
struct ParametricPath {
    double t_begin = 0.0;
    double t_end = 0.0;
    std::function<PathSample(double)> at;

    PathSpec sample(std::size_t count) const;
};

// Builds a PathSpec from events, filling endpoints from the first/last sample.
PathSpec make_path(std::vector<PathSample> samples);

// Same events traversed in the opposite direction over the same time window.
PathSpec reversed(const PathSpec& path);

struct InterferometerGeometry {
    double w = 1e-3;   // arm separation, m
    double L = 1.0;    // half-length of each arm, m
    double v0 = 1.0;   // speed far from the source, m/s

    // Throws DomainError unless w > 0, L > w and 0 < v0 < c.
    void validate(const PhysicalConstants& k) const;
    // K = 1 + v0^2 / (2 c^2).
    double energy_ratio(const PhysicalConstants& k) const;
};

enum class ArmSide { left, right };
enum class DeltaTauMode { closed_form, quadrature };

// Proper-time difference and the clock phases it generates. Log fields hold
// log10 of the magnitude; the sign is carried separately.
struct PhaseBundle {
    double delta_tau = 0.0;
    double log10_delta_tau = 0.0;
    int sign = 0;
    double phase_mean = 0.0;  // Ebar * delta_tau / hbar
    double log10_phase_mean = 0.0;
    double phase_gap = 0.0;   // dE * delta_tau / hbar
    double log10_phase_gap = 0.0;
    // Quadrature bookkeeping; zero for the closed form.
    std::size_t quadrature_intervals = 0;
};

// Fills the phase fields of b for a clock with mean energy and gap (J).
PhaseBundle with_phases(PhaseBundle b, double mean_energy, double gap_energy,
                        const PhysicalConstants& k);

// Integrand of the first-order deviation per unit coordinate time:
// -(1/2) h_{mu nu} xdot^mu xdot^nu / c^2 * dt/dtau_bar, which for the
// frame-dragging term is -h_tphi (dphi/dt) / c * dt/dtau_bar.
double first_order_integrand(const RotatingMassModel& model, const PathSample& s);

// First-order proper-time shift along a background path. Positive for
// motion co-rotating with J.
double delta_tau_first_order(const RotatingMassModel& model, const PathSpec& background_path);
QuadratureResult delta_tau_first_order(const RotatingMassModel& model, const ParametricPath& path,
                                       const SimpsonOptions& opts = {});

// tau(P) - tau(P reversed) to first order in the perturbation.
double delta_tau_pair(const RotatingMassModel& model, const PathSpec& forward_path);

// Arm integrals for a clock whose phase splits into a background part and a
// frame-dragging part: I_N = int sqrt(-g_tt - v^2/c^2) dt (background proper
// time) and I_f = int h_tphi dphi/dt / (c dtau_bar/dt) dt, the frame-dragging
// deficit, so tau = I_N - I_f to first order.
QuadratureResult newtonian_integral(const RotatingMassModel& model, const ParametricPath& path,
                                    const SimpsonOptions& opts = {});
QuadratureResult framedrag_integral(const RotatingMassModel& model, const ParametricPath& path,
                                    const SimpsonOptions& opts = {});

// Straight equatorial arm at distance w/2 from the rotation axis. The beam
// enters at y = -L and recombines at y = +L; the right arm sits at x = +w/2
// (co-rotating for J > 0), the left arm at x = -w/2.
ParametricPath straight_arm(const InterferometerGeometry& geom, ArmSide side);
PathSpec build_straight_arm(const InterferometerGeometry& geom, ArmSide side,
                            std::size_t samples = 4097);

// Delta tau = (tau(right) - tau(left)) / 2, either as 16 G J K / (c^4 w)
// (infinite arms) or by adaptive quadrature over arms of half-length L.
PhaseBundle delta_tau_interferometer(const RotatingMassModel& model,
                                     const InterferometerGeometry& geom, DeltaTauMode mode,
                                     const SimpsonOptions& opts = {});

}  // namespace gravclock
