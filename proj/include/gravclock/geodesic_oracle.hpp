#pragma once

#include <cstddef>
#include <vector>

#include "gravclock/propertime.hpp"

namespace gravclock {

// Fixed endpoint events; end.t must exceed start.t.
struct BoundaryConditions {
    SpacetimePoint start;
    SpacetimePoint end;
};

struct ExtremalPathResult {
    PathSpec path;
    double proper_time = 0.0;   // s, quadrature of dtau/dt along path
    bool converged = false;
    double residual_norm = 0.0; // c * max |d tau / d x_k| over interior nodes
    int sweeps = 0;
};

struct RelaxationOptions {
    std::size_t segments = 1024;
    double relative_tolerance = 1e-12;
    int max_sweeps = 10000;
    // Interior nodes may not pass closer than this to the origin.
    double min_radius_fraction = 1e-3;
};

// Maximises the proper time between fixed events by relaxing the spatial
// positions of interior nodes on a uniform coordinate-time grid. Each sweep
// is a damped Newton step on the discrete action. Throws NoConvergence when
// the sweep cap is reached; NotTimelike if the search leaves the light cone.
ExtremalPathResult solve_extremal_path(const RotatingMassModel& model,
                                       const BoundaryConditions& bc, bool include_perturbation,
                                       const RelaxationOptions& opts = {});

// Simpson quadrature of the exact dtau/dt (full metric, not the expansion).
double proper_time_along(const RotatingMassModel& model, const PathSpec& path,
                         bool include_perturbation);

struct FirstOrderRow {
    double epsilon = 0.0;
    double exact = 0.0;        // tau(perturbed extremal) - tau(background extremal)
    double first_order = 0.0;  // delta_tau_first_order on the background extremal
    double residual = 0.0;     // |exact - first_order|
};

struct FirstOrderReport {
    std::vector<FirstOrderRow> rows;
    // Least-squares slope of log residual against log |epsilon| over rows with
    // epsilon != 0 and a positive residual.
    double slope = 0.0;
    double background_proper_time = 0.0;
};

// For each epsilon solves the extremal path with J scaled by epsilon and
// compares the exact proper-time shift to the first-order prediction.
FirstOrderReport verify_first_order(const RotatingMassModel& model, const BoundaryConditions& bc,
                                    const std::vector<double>& scale_sequence,
                                    const RelaxationOptions& opts = {});

// Relative spread (max - min) / mean of energy_ratio along a path, using the
// metric speed of each sample.
double energy_ratio_drift(const RotatingMassModel& model, const PathSpec& path);

}  // namespace gravclock
