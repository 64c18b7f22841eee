#include "gravclock/propertime.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gravclock/errors.hpp"

namespace gravclock {

void PathSpec::validate() const {
    if (samples.size() < 2) throw DomainError("a path needs at least two samples");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].point.t > samples[i - 1].point.t)) {
            throw DomainError("path samples must be strictly increasing in t");
        }
    }
    if (samples.front().point.t != start.t || samples.back().point.t != end.t) {
        throw DomainError("path endpoints disagree with the sample list");
    }
}

PathSpec ParametricPath::sample(std::size_t count) const {
    if (count < 2) throw DomainError("a path needs at least two samples");
    std::vector<PathSample> out;
    out.reserve(count);
    const double span = t_end - t_begin;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = (i + 1 == count)
                             ? t_end
                             : t_begin + span * static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(at(t));
    }
    return make_path(std::move(out));
}

PathSpec make_path(std::vector<PathSample> samples) {
    PathSpec p;
    p.samples = std::move(samples);
    if (!p.samples.empty()) {
        p.start = p.samples.front().point;
        p.end = p.samples.back().point;
    }
    p.validate();
    return p;
}

PathSpec reversed(const PathSpec& path) {
    path.validate();
    const double t0 = path.start.t;
    const double t1 = path.end.t;
    std::vector<PathSample> out(path.samples.rbegin(), path.samples.rend());
    for (auto& s : out) {
        s.point.t = t0 + t1 - s.point.t;
        s.velocity.dr = -s.velocity.dr;
        s.velocity.dtheta = -s.velocity.dtheta;
        s.velocity.dphi = -s.velocity.dphi;
    }
    return make_path(std::move(out));
}

void InterferometerGeometry::validate(const PhysicalConstants& k) const {
    if (!(w > 0.0)) throw DomainError("arm separation w must be positive");
    if (!(L > w)) throw DomainError("arm half-length L must exceed w");
    if (!(v0 > 0.0 && v0 < k.c)) throw DomainError("v0 must lie in (0, c)");
}

double InterferometerGeometry::energy_ratio(const PhysicalConstants& k) const {
    return 1.0 + v0 * v0 / (2.0 * k.c * k.c);
}

namespace {

double signed_log10(double x, int& sign) {
    sign = (x > 0) - (x < 0);
    return x == 0.0 ? -std::numeric_limits<double>::infinity() : std::log10(std::abs(x));
}

}  // namespace

PhaseBundle with_phases(PhaseBundle b, double mean_energy, double gap_energy,
                        const PhysicalConstants& k) {
    b.phase_mean = mean_energy * b.delta_tau / k.hbar;
    b.phase_gap = gap_energy * b.delta_tau / k.hbar;
    const double inf = std::numeric_limits<double>::infinity();
    const double log_hbar = std::log10(k.hbar);
    b.log10_phase_mean = (mean_energy == 0.0 || b.sign == 0)
                             ? -inf
                             : std::log10(std::abs(mean_energy)) + b.log10_delta_tau - log_hbar;
    b.log10_phase_gap = (gap_energy == 0.0 || b.sign == 0)
                            ? -inf
                            : std::log10(std::abs(gap_energy)) + b.log10_delta_tau - log_hbar;
    return b;
}

double first_order_integrand(const RotatingMassModel& model, const PathSample& s) {
    const auto g = metric_at(model, s.point);
    const double rate = proper_time_rate(model, s.point, s.velocity, false);
    // h_{mu nu} xdot^mu xdot^nu = 2 h_tphi c dphi/dt for the frame-dragging
    // term. With signature (-,+,+,+), c^2 dtau^2 = -g dx dx, so the shift
    // enters with a minus sign.
    const double c = model.constants.c;
    return -g.h_tphi * s.velocity.dphi / c / rate;
}

double delta_tau_first_order(const RotatingMassModel& model, const PathSpec& background_path) {
    background_path.validate();
    std::vector<double> t;
    std::vector<double> y;
    t.reserve(background_path.samples.size());
    y.reserve(background_path.samples.size());
    for (const auto& s : background_path.samples) {
        t.push_back(s.point.t);
        y.push_back(first_order_integrand(model, s));
    }
    return simpson_tabulated(t, y);
}

QuadratureResult delta_tau_first_order(const RotatingMassModel& model, const ParametricPath& path,
                                       const SimpsonOptions& opts) {
    if (model.J == 0.0) return {0.0, 0, 0.0, true};
    return integrate_simpson(
        [&](double t) { return first_order_integrand(model, path.at(t)); }, path.t_begin,
        path.t_end, opts);
}

double delta_tau_pair(const RotatingMassModel& model, const PathSpec& forward_path) {
    return delta_tau_first_order(model, forward_path) -
           delta_tau_first_order(model, reversed(forward_path));
}

QuadratureResult newtonian_integral(const RotatingMassModel& model, const ParametricPath& path,
                                    const SimpsonOptions& opts) {
    return integrate_simpson(
        [&](double t) {
            const auto s = path.at(t);
            return proper_time_rate(model, s.point, s.velocity, false);
        },
        path.t_begin, path.t_end, opts);
}

QuadratureResult framedrag_integral(const RotatingMassModel& model, const ParametricPath& path,
                                    const SimpsonOptions& opts) {
    if (model.J == 0.0) return {0.0, 0, 0.0, true};
    return integrate_simpson(
        [&](double t) { return -first_order_integrand(model, path.at(t)); }, path.t_begin,
        path.t_end, opts);
}

ParametricPath straight_arm(const InterferometerGeometry& geom, ArmSide side) {
    const double x = side == ArmSide::right ? 0.5 * geom.w : -0.5 * geom.w;
    const double L = geom.L;
    const double v0 = geom.v0;
    ParametricPath p;
    p.t_begin = 0.0;
    p.t_end = 2.0 * L / v0;
    p.at = [x, L, v0](double t) {
        const double y = -L + v0 * t;
        const double rho2 = x * x + y * y;
        const double r = std::sqrt(rho2);
        PathSample s;
        s.point = {t, r, std::numbers::pi / 2.0, std::atan2(y, x)};
        // Velocity (0, v0, 0) in the equatorial plane.
        s.velocity.dr = y * v0 / r;
        s.velocity.dtheta = 0.0;
        s.velocity.dphi = x * v0 / rho2;
        return s;
    };
    return p;
}

PathSpec build_straight_arm(const InterferometerGeometry& geom, ArmSide side, std::size_t samples) {
    return straight_arm(geom, side).sample(samples);
}

PhaseBundle delta_tau_interferometer(const RotatingMassModel& model,
                                     const InterferometerGeometry& geom, DeltaTauMode mode,
                                     const SimpsonOptions& opts) {
    const auto& k = model.constants;
    PhaseBundle b;
    if (mode == DeltaTauMode::closed_form) {
        if (!(geom.w > 0.0)) throw DomainError("arm separation w must be positive");
        if (!(geom.v0 >= 0.0 && geom.v0 < k.c)) throw DomainError("v0 must lie in [0, c)");
        const double K = geom.energy_ratio(k);
        b.delta_tau = 16.0 * k.G * model.J * K / (k.c * k.c * k.c * k.c * geom.w);
        b.sign = (model.J > 0) - (model.J < 0);
        b.log10_delta_tau =
            model.J == 0.0
                ? -std::numeric_limits<double>::infinity()
                : std::log10(16.0) + std::log10(k.G) + std::log10(std::abs(model.J)) +
                      std::log1p(geom.v0 * geom.v0 / (2.0 * k.c * k.c)) / std::numbers::ln10 -
                      4.0 * std::log10(k.c) - std::log10(geom.w);
        return b;
    }

    geom.validate(k);
    const auto right = delta_tau_first_order(model, straight_arm(geom, ArmSide::right), opts);
    const auto left = delta_tau_first_order(model, straight_arm(geom, ArmSide::left), opts);
    if (!right.converged || !left.converged) {
        throw NoConvergence("arm quadrature did not reach the requested tolerance");
    }
    b.delta_tau = 0.5 * (right.value - left.value);
    b.log10_delta_tau = signed_log10(b.delta_tau, b.sign);
    b.quadrature_intervals = right.intervals + left.intervals;
    return b;
}

}  // namespace gravclock
