#include "gravclock/spacetime.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gravclock/errors.hpp"

namespace gravclock {

void PhysicalConstants::validate() const {
    auto ok = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!ok(c) || !ok(G) || !ok(hbar)) {
        throw DomainError("physical constants must be finite and positive");
    }
}

void check_weak_field(const RotatingMassModel& model, const SpacetimePoint& pt) {
    if (!(pt.r > 0.0) || !std::isfinite(pt.r)) {
        throw DomainError("radius must be positive, got r = " + std::to_string(pt.r));
    }
    if (!(pt.theta >= 0.0 && pt.theta <= std::numbers::pi)) {
        throw DomainError("polar angle outside [0, pi]");
    }
    if (model.M < 0.0) throw DomainError("source mass must be non-negative");
    const auto& k = model.constants;
    const double compactness = 2.0 * k.G * model.M / (k.c * k.c * pt.r);
    if (!(compactness < model.weak_field_threshold)) {
        throw WeakFieldViolation("2GM/(c^2 r) = " + std::to_string(compactness) +
                                 " exceeds the weak-field threshold");
    }
}

MetricComponents metric_at(const RotatingMassModel& model, const SpacetimePoint& pt) {
    check_weak_field(model, pt);
    const auto& k = model.constants;
    const double u = 2.0 * k.G * model.M / (k.c * k.c * pt.r);
    const double s = std::sin(pt.theta);
    MetricComponents g;
    g.g_tt = -1.0 + u;
    g.g_rr = 1.0 + u;
    g.g_thth = pt.r * pt.r;
    g.g_phph = pt.r * pt.r * s * s;
    g.h_tphi = -4.0 * k.G * model.J / (k.c * k.c * k.c * pt.r) * s * s;
    return g;
}

double newtonian_potential(const RotatingMassModel& model, double r) {
    return -model.constants.G * model.M / r;
}

double metric_speed_squared(const MetricComponents& g, const CoordinateVelocity& vel) {
    return g.g_rr * vel.dr * vel.dr + g.g_thth * vel.dtheta * vel.dtheta +
           g.g_phph * vel.dphi * vel.dphi;
}

double proper_time_rate_squared(const RotatingMassModel& model, const SpacetimePoint& pt,
                                const CoordinateVelocity& vel, bool include_perturbation) {
    const auto g = metric_at(model, pt);
    const double c = model.constants.c;
    const double phi = newtonian_potential(model, pt.r);
    double q = 1.0 + 2.0 * phi / (c * c) - metric_speed_squared(g, vel) / (c * c);
    if (include_perturbation) q -= 2.0 * g.h_tphi / c * vel.dphi;
    return q;
}

double proper_time_rate(const RotatingMassModel& model, const SpacetimePoint& pt,
                        const CoordinateVelocity& vel, bool include_perturbation) {
    const double q = proper_time_rate_squared(model, pt, vel, include_perturbation);
    if (!(q > 0.0)) throw NotTimelike("dtau/dt radicand is " + std::to_string(q));
    return std::sqrt(q);
}

double energy_ratio(const RotatingMassModel& model, const SpacetimePoint& pt, double speed) {
    check_weak_field(model, pt);
    const auto& k = model.constants;
    return 1.0 + speed * speed / (2.0 * k.c * k.c) - k.G * model.M / (k.c * k.c * pt.r);
}

double perturbation_validity(const RotatingMassModel& model, const SpacetimePoint& pt,
                             const CoordinateVelocity& vel) {
    const auto g = metric_at(model, pt);
    const double c = model.constants.c;
    const double background = g.g_tt * c * c + metric_speed_squared(g, vel);
    const double perturbation = 2.0 * g.h_tphi * c * vel.dphi;
    if (background == 0.0) throw DomainError("null direction: background interval vanishes");
    return std::abs(perturbation / background);
}

}  // namespace gravclock
