#pragma once

#include "gravclock/constants.hpp"

namespace gravclock {

// Source of the weak-field Kerr metric in Boyer-Lindquist coordinates.
// J is signed; J > 0 means rotation counter-clockwise about +z.
struct RotatingMassModel {
    double M = 0.0;  // kg
    double J = 0.0;  // kg m^2 / s
    PhysicalConstants constants{};
    // Largest admissible 2GM/(c^2 r).
    double weak_field_threshold = 0.5;
};

struct SpacetimePoint {
    double t = 0.0;      // s
    double r = 0.0;      // m
    double theta = 0.0;  // rad, polar angle from +z
    double phi = 0.0;    // rad
};

struct CoordinateVelocity {
    double dr = 0.0;      // dr/dt, m/s
    double dtheta = 0.0;  // dtheta/dt, rad/s
    double dphi = 0.0;    // dphi/dt, rad/s
};

// Metric entries with x^0 = ct. The diagonal part is the Schwarzschild
// background; h_tphi is the frame-dragging perturbation (units of m).
struct MetricComponents {
    double g_tt = -1.0;
    double g_rr = 1.0;
    double g_thth = 0.0;
    double g_phph = 0.0;
    double h_tphi = 0.0;
};

// Weak-field guard. Throws DomainError for r <= 0 or theta outside [0, pi],
// WeakFieldViolation when 2GM/(c^2 r) >= model.weak_field_threshold.
void check_weak_field(const RotatingMassModel& model, const SpacetimePoint& pt);

MetricComponents metric_at(const RotatingMassModel& model, const SpacetimePoint& pt);

// Newtonian potential read off the background g_tt: Phi = -GM/r.
double newtonian_potential(const RotatingMassModel& model, double r);

// v^2 = sum_i g_ii (dq^i/dt)^2 with the background diagonal.
double metric_speed_squared(const MetricComponents& g, const CoordinateVelocity& vel);

// Radicand of dtau/dt: 1 + 2 Phi/c^2 - v^2/c^2 - (2 g_0phi / c) dphi/dt.
// With include_perturbation = false the frame-dragging term is dropped.
double proper_time_rate_squared(const RotatingMassModel& model, const SpacetimePoint& pt,
                                const CoordinateVelocity& vel, bool include_perturbation = true);

// dtau/dt. Throws NotTimelike when the radicand is not positive.
double proper_time_rate(const RotatingMassModel& model, const SpacetimePoint& pt,
                        const CoordinateVelocity& vel, bool include_perturbation = true);

// E / (m c^2) ~ 1 + v^2/(2c^2) - GM/(c^2 r).
double energy_ratio(const RotatingMassModel& model, const SpacetimePoint& pt, double speed);

// |h dx dx / gbar dx dx| for the direction (c, dr, dtheta, dphi) at pt.
double perturbation_validity(const RotatingMassModel& model, const SpacetimePoint& pt,
                             const CoordinateVelocity& vel);

}  // namespace gravclock
