#include "gravclock/quadrature.hpp"

#include <cmath>

#include "gravclock/errors.hpp"

namespace gravclock {

QuadratureResult integrate_simpson(const std::function<double(double)>& f, double a, double b,
                                   const SimpsonOptions& opts) {
    if (!(b > a)) throw DomainError("integration bounds must satisfy a < b");
    std::size_t n = opts.initial_intervals;
    if (n < 2) n = 2;
    if (n % 2 != 0) ++n;

    // Split the running sums so each refinement only evaluates new points:
    // ends, odd-index points, even interior points.
    double h = (b - a) / static_cast<double>(n);
    const double ends = f(a) + f(b);
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double y = f(a + h * static_cast<double>(i));
        (i % 2 ? odd : even) += y;
    }
    double simpson = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);

    QuadratureResult out;
    out.value = simpson;
    out.intervals = n;
    double previous_extrapolated = simpson;
    bool have_previous = false;
    int streak = 0;

    while (2 * n <= opts.max_intervals) {
        const std::size_t n2 = 2 * n;
        const double h2 = h / 2.0;
        double fresh = 0.0;
        for (std::size_t i = 1; i < n2; i += 2) fresh += f(a + h2 * static_cast<double>(i));
        even += odd;
        odd = fresh;
        const double refined = h2 / 3.0 * (ends + 4.0 * odd + 2.0 * even);
        const double extrapolated = refined + (refined - simpson) / 15.0;

        if (have_previous) {
            const double scale = std::max(std::abs(extrapolated), 1e-300);
            out.relative_change = std::abs(extrapolated - previous_extrapolated) / scale;
            if (out.relative_change < opts.relative_tolerance ||
                extrapolated == previous_extrapolated) {
                ++streak;
            } else {
                streak = 0;
            }
        }
        out.value = extrapolated;
        out.intervals = n2;
        previous_extrapolated = extrapolated;
        have_previous = true;
        simpson = refined;
        n = n2;
        h = h2;
        if (streak >= opts.confirmations) {
            out.converged = true;
            break;
        }
    }
    return out;
}

double simpson_tabulated(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DimensionMismatch("abscissa and ordinate sizes differ");
    const std::size_t n = x.size();
    if (n < 2) throw DomainError("at least two samples are required");
    if (n == 2) return 0.5 * (x[1] - x[0]) * (y[0] + y[1]);

    // Non-uniform Simpson over pairs of intervals.
    auto pair_rule = [&](std::size_t i) {
        const double h0 = x[i + 1] - x[i];
        const double h1 = x[i + 2] - x[i + 1];
        const double hs = h0 + h1;
        return hs / 6.0 *
               ((2.0 - h1 / h0) * y[i] + hs * hs / (h0 * h1) * y[i + 1] + (2.0 - h0 / h1) * y[i + 2]);
    };

    const std::size_t intervals = n - 1;
    double total = 0.0;
    const std::size_t paired = intervals - intervals % 2;
    for (std::size_t i = 0; i + 2 <= paired; i += 2) total += pair_rule(i);
    if (intervals % 2 == 1) {
        // Last interval from the quadratic through the final three samples.
        const std::size_t i = n - 3;
        const double h0 = x[i + 1] - x[i];
        const double h1 = x[i + 2] - x[i + 1];
        const double a = (2.0 * h1 * h1 + 3.0 * h0 * h1) / (6.0 * (h0 + h1));
        const double b = (h1 * h1 + 3.0 * h0 * h1) / (6.0 * h0);
        const double c = -(h1 * h1 * h1) / (6.0 * h0 * (h0 + h1));
        total += a * y[i + 2] + b * y[i + 1] + c * y[i];
    }
    return total;
}

}  // namespace gravclock
