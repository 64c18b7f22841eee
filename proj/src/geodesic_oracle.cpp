#include "gravclock/geodesic_oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gravclock/errors.hpp"

namespace gravclock {

namespace {

// Forward-mode dual number; nesting Dual<Dual<double>> yields second
// derivatives.
template <class T>
struct Dual {
    T v{};
    T d{};
};

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
template <class T>
Dual<T> operator*(double s, const Dual<T>& a) { return {s * a.v, s * a.d}; }
template <class T>
Dual<T> operator+(double s, const Dual<T>& a) { return {s + a.v, a.d}; }
template <class T>
Dual<T> operator/(double s, const Dual<T>& a) { return {s / a.v, -s * a.d / (a.v * a.v)}; }

inline double sqrt_any(double x) { return std::sqrt(x); }
template <class T>
Dual<T> sqrt_any(const Dual<T>& a) {
    const T s = sqrt_any(a.v);
    return {s, a.d / (2.0 * s)};
}

struct RateParams {
    double c2 = 1.0;       // c^2
    double gm_c2 = 0.0;    // GM / c^2
    double kappa = 0.0;    // 8 G J / c^4, zero without the perturbation
};

// (dtau/dt)^2 at Cartesian position p moving with velocity v.
template <class T>
T rate_squared(const RateParams& k, const std::array<T, 6>& z) {
    const T& x = z[0];
    const T& y = z[1];
    const T& w = z[2];
    const T r2 = x * x + y * y + w * w;
    const T r = sqrt_any(r2);
    const T u = k.gm_c2 / r;
    const T pv = x * z[3] + y * z[4] + w * z[5];
    const T v2 = z[3] * z[3] + z[4] * z[4] + z[5] * z[5];
    T q = (1.0 + (-2.0) * u) - (1.0 / k.c2) * (v2 + 2.0 * (u * pv * pv / r2));
    if (k.kappa != 0.0) q = q + k.kappa * ((x * z[4] - y * z[3]) / (r2 * r));
    return q;
}

using Vec3 = Eigen::Vector3d;

Vec3 to_cartesian(const SpacetimePoint& p) {
    const double s = std::sin(p.theta);
    return {p.r * s * std::cos(p.phi), p.r * s * std::sin(p.phi), p.r * std::cos(p.theta)};
}

PathSample to_sample(double t, const Vec3& x, const Vec3& v) {
    const double rho2 = x.x() * x.x() + x.y() * x.y();
    const double r = x.norm();
    const double rho = std::sqrt(rho2);
    PathSample s;
    s.point = {t, r, std::acos(std::clamp(x.z() / r, -1.0, 1.0)), std::atan2(x.y(), x.x())};
    const double rdot = x.dot(v) / r;
    s.velocity.dr = rdot;
    s.velocity.dtheta = rho > 0.0 ? (x.z() * rdot - r * v.z()) / (r * rho) : 0.0;
    s.velocity.dphi = rho2 > 0.0 ? (x.x() * v.y() - x.y() * v.x()) / rho2 : 0.0;
    return s;
}

class Relaxation {
public:
    Relaxation(const RotatingMassModel& model, const BoundaryConditions& bc, bool perturb,
               const RelaxationOptions& opts)
        : opts_(opts) {
        const auto& k = model.constants;
        params_.c2 = k.c * k.c;
        params_.gm_c2 = k.G * model.M / (k.c * k.c);
        params_.kappa = perturb ? 8.0 * k.G * model.J / (k.c * k.c * k.c * k.c) : 0.0;
        n_ = std::max<std::size_t>(opts.segments, 2);
        t0_ = bc.start.t;
        dt_ = (bc.end.t - bc.start.t) / static_cast<double>(n_);
        const Vec3 a = to_cartesian(bc.start);
        const Vec3 b = to_cartesian(bc.end);
        nodes_.resize(n_ + 1);
        for (std::size_t i = 0; i <= n_; ++i) {
            const double f = static_cast<double>(i) / static_cast<double>(n_);
            nodes_[i] = (1.0 - f) * a + f * b;
        }
        scale_ = std::max({a.norm(), b.norm(), (b - a).norm()});
        min_radius_ = opts.min_radius_fraction * std::min(a.norm(), b.norm());
    }

    // Discrete action sum_k dt * sqrt(Q(midpoint, slope)); NaN when any
    // segment is not timelike or leaves the admissible region.
    double action(const std::vector<Vec3>& x) const {
        double sum = 0.0;
        for (std::size_t k = 0; k < n_; ++k) {
            const Vec3 p = 0.5 * (x[k] + x[k + 1]);
            if (p.norm() < min_radius_) return std::nan("");
            const Vec3 v = (x[k + 1] - x[k]) / dt_;
            const std::array<double, 6> z{p.x(), p.y(), p.z(), v.x(), v.y(), v.z()};
            const double q = rate_squared(params_, z);
            if (!(q > 0.0)) return std::nan("");
            sum += dt_ * std::sqrt(q);
        }
        return sum;
    }

    ExtremalPathResult run() {
        const std::size_t m = 3 * (n_ - 1);
        double tau = action(nodes_);
        if (std::isnan(tau)) throw NotTimelike("initial straight path is not timelike");

        ExtremalPathResult out;
        Eigen::VectorXd grad(m);
        std::vector<Eigen::Triplet<double>> triplets;
        Eigen::SparseMatrix<double> hess(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        bool done = false;
        int sweep = 0;
        for (; sweep < opts_.max_sweeps && !done; ++sweep) {
            assemble(grad, triplets);
            hess.setFromTriplets(triplets.begin(), triplets.end());
            Eigen::SparseMatrix<double> neg = -hess;
            Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(neg);
            Eigen::VectorXd step;
            if (solver.info() == Eigen::Success) {
                step = solver.solve(grad);
            }
            if (solver.info() != Eigen::Success || !step.allFinite() || grad.dot(step) <= 0.0) {
                // Not locally concave: fall back to a scaled gradient step.
                step = grad * (dt_ * params_.c2);
            }

            double alpha = 1.0;
            std::vector<Vec3> trial = nodes_;
            double tau_trial = tau;
            bool accepted = false;
            for (int halving = 0; halving < 60; ++halving, alpha *= 0.5) {
                for (std::size_t i = 1; i < n_; ++i) {
                    trial[i] = nodes_[i] + alpha * step.segment<3>(static_cast<Eigen::Index>(3 * (i - 1)));
                }
                tau_trial = action(trial);
                if (!std::isnan(tau_trial) && tau_trial >= tau - 4e-16 * std::abs(tau)) {
                    accepted = true;
                    break;
                }
            }
            if (!accepted) {
                // No admissible improvement remains at double precision.
                done = true;
                break;
            }
            const double step_norm = alpha * step.lpNorm<Eigen::Infinity>();
            const double change = std::abs(tau_trial - tau) / std::abs(tau);
            nodes_.swap(trial);
            tau = tau_trial;
            if (sweep >= 1 && change < opts_.relative_tolerance && step_norm < 1e-9 * scale_) {
                done = true;
            }
        }
        out.sweeps = sweep;
        assemble(grad, triplets);
        out.residual_norm = std::sqrt(params_.c2) * grad.lpNorm<Eigen::Infinity>();
        out.converged = done;
        if (!done) {
            throw NoConvergence("extremal path relaxation hit the sweep cap (" +
                                std::to_string(opts_.max_sweeps) + ")");
        }
        out.path = to_path();
        return out;
    }

private:
    void assemble(Eigen::VectorXd& grad, std::vector<Eigen::Triplet<double>>& triplets) const {
        using D1 = Dual<double>;
        using D2 = Dual<D1>;
        grad.setZero();
        triplets.clear();
        triplets.reserve(n_ * 36);
        for (std::size_t k = 0; k < n_; ++k) {
            const Vec3 p = 0.5 * (nodes_[k] + nodes_[k + 1]);
            const Vec3 v = (nodes_[k + 1] - nodes_[k]) / dt_;
            const std::array<double, 6> z0{p.x(), p.y(), p.z(), v.x(), v.y(), v.z()};

            // Derivatives of f = dt * sqrt(Q) with respect to z = (p, v).
            Eigen::Matrix<double, 6, 1> gz;
            Eigen::Matrix<double, 6, 6> hz;
            for (int i = 0; i < 6; ++i) {
                for (int j = i; j < 6; ++j) {
                    std::array<D2, 6> z;
                    for (int a = 0; a < 6; ++a) {
                        z[a] = D2{D1{z0[a], a == j ? 1.0 : 0.0}, D1{a == i ? 1.0 : 0.0, 0.0}};
                    }
                    const D2 f = sqrt_any(rate_squared(params_, z));
                    hz(i, j) = hz(j, i) = dt_ * f.d.d;
                    if (i == j) gz(i) = dt_ * f.d.v;
                }
            }
            // z = T (x_k, x_{k+1}); T = [[I/2, I/2], [-I/dt, I/dt]].
            Eigen::Matrix<double, 6, 6> T = Eigen::Matrix<double, 6, 6>::Zero();
            T.block<3, 3>(0, 0) = 0.5 * Eigen::Matrix3d::Identity();
            T.block<3, 3>(0, 3) = 0.5 * Eigen::Matrix3d::Identity();
            T.block<3, 3>(3, 0) = -Eigen::Matrix3d::Identity() / dt_;
            T.block<3, 3>(3, 3) = Eigen::Matrix3d::Identity() / dt_;
            const Eigen::Matrix<double, 6, 1> gx = T.transpose() * gz;
            const Eigen::Matrix<double, 6, 6> hx = T.transpose() * hz * T;

            const std::array<std::size_t, 2> node{k, k + 1};
            for (int a = 0; a < 2; ++a) {
                if (node[a] == 0 || node[a] == n_) continue;
                const std::size_t ra = 3 * (node[a] - 1);
                grad.segment<3>(static_cast<Eigen::Index>(ra)) += gx.segment<3>(3 * a);
                for (int b = 0; b < 2; ++b) {
                    if (node[b] == 0 || node[b] == n_) continue;
                    const std::size_t rb = 3 * (node[b] - 1);
                    for (int i = 0; i < 3; ++i) {
                        for (int j = 0; j < 3; ++j) {
                            triplets.emplace_back(static_cast<int>(ra + i), static_cast<int>(rb + j),
                                                  hx(3 * a + i, 3 * b + j));
                        }
                    }
                }
            }
        }
    }

    PathSpec to_path() const {
        std::vector<PathSample> samples;
        samples.reserve(n_ + 1);
        for (std::size_t i = 0; i <= n_; ++i) {
            Vec3 v;
            if (i == 0) {
                v = (-3.0 * nodes_[0] + 4.0 * nodes_[1] - nodes_[2]) / (2.0 * dt_);
            } else if (i == n_) {
                v = (3.0 * nodes_[n_] - 4.0 * nodes_[n_ - 1] + nodes_[n_ - 2]) / (2.0 * dt_);
            } else {
                v = (nodes_[i + 1] - nodes_[i - 1]) / (2.0 * dt_);
            }
            samples.push_back(to_sample(t0_ + dt_ * static_cast<double>(i), nodes_[i], v));
        }
        return make_path(std::move(samples));
    }

    RelaxationOptions opts_;
    RateParams params_;
    std::size_t n_ = 0;
    double t0_ = 0.0;
    double dt_ = 0.0;
    double scale_ = 1.0;
    double min_radius_ = 0.0;
    std::vector<Vec3> nodes_;
};

}  // namespace

ExtremalPathResult solve_extremal_path(const RotatingMassModel& model,
                                       const BoundaryConditions& bc, bool include_perturbation,
                                       const RelaxationOptions& opts) {
    if (!(bc.end.t > bc.start.t)) throw DomainError("boundary events must have t_end > t_start");
    check_weak_field(model, bc.start);
    check_weak_field(model, bc.end);
    Relaxation relax(model, bc, include_perturbation, opts);
    auto out = relax.run();
    out.proper_time = proper_time_along(model, out.path, include_perturbation);
    return out;
}

double proper_time_along(const RotatingMassModel& model, const PathSpec& path,
                         bool include_perturbation) {
    path.validate();
    std::vector<double> t;
    std::vector<double> rate;
    t.reserve(path.samples.size());
    rate.reserve(path.samples.size());
    for (const auto& s : path.samples) {
        t.push_back(s.point.t);
        rate.push_back(proper_time_rate(model, s.point, s.velocity, include_perturbation));
    }
    return simpson_tabulated(t, rate);
}

FirstOrderReport verify_first_order(const RotatingMassModel& model, const BoundaryConditions& bc,
                                    const std::vector<double>& scale_sequence,
                                    const RelaxationOptions& opts) {
    FirstOrderReport report;
    const auto background = solve_extremal_path(model, bc, false, opts);
    report.background_proper_time = background.proper_time;

    std::vector<double> lx;
    std::vector<double> ly;
    for (double eps : scale_sequence) {
        RotatingMassModel scaled = model;
        scaled.J = eps * model.J;
        FirstOrderRow row;
        row.epsilon = eps;
        const auto perturbed = solve_extremal_path(scaled, bc, true, opts);
        row.exact = perturbed.proper_time - background.proper_time;
        row.first_order = delta_tau_first_order(scaled, background.path);
        row.residual = std::abs(row.exact - row.first_order);
        if (eps != 0.0 && row.residual > 0.0) {
            lx.push_back(std::log(std::abs(eps)));
            ly.push_back(std::log(row.residual));
        }
        report.rows.push_back(row);
    }
    if (lx.size() >= 2) {
        const double n = static_cast<double>(lx.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        report.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return report;
}

double energy_ratio_drift(const RotatingMassModel& model, const PathSpec& path) {
    double lo = 0.0;
    double hi = 0.0;
    double sum = 0.0;
    bool first = true;
    for (const auto& s : path.samples) {
        const auto g = metric_at(model, s.point);
        const double e = energy_ratio(model, s.point, std::sqrt(metric_speed_squared(g, s.velocity)));
        if (first) {
            lo = hi = e;
            first = false;
        }
        lo = std::min(lo, e);
        hi = std::max(hi, e);
        sum += e;
    }
    return (hi - lo) / (sum / static_cast<double>(path.samples.size()));
}

}  // namespace gravclock
