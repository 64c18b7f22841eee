#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace gravclock {

struct QuadratureResult {
    double value = 0.0;
    std::size_t intervals = 0;
    double relative_change = 0.0;
    bool converged = false;
};

struct SimpsonOptions {
    double relative_tolerance = 1e-10;
    std::size_t initial_intervals = 256;
    std::size_t max_intervals = std::size_t{1} << 20;
    // Number of consecutive refinements that must meet the tolerance.
    int confirmations = 2;
};

// Composite Simpson on [a, b], doubling the interval count and reusing
// previous samples until the Richardson-extrapolated estimate changes by less
// than the tolerance. Returns the extrapolated value.
QuadratureResult integrate_simpson(const std::function<double(double)>& f, double a, double b,
                                   const SimpsonOptions& opts = {});

// Composite Simpson over tabulated samples (x strictly increasing, not
// necessarily uniform). An even number of intervals uses Simpson throughout;
// an odd count finishes with the three-point end correction on the last
// interval. Two samples fall back to the trapezoid rule.
double simpson_tabulated(std::span<const double> x, std::span<const double> y);

}  // namespace gravclock
