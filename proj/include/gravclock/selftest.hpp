#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gravclock {

struct SuiteResult {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

// Closed-form versus state-vector/density-matrix checks on fixed grids and
// on seeded random samples. Deterministic for a given seed.
std::vector<SuiteResult> run_selftest(std::uint64_t seed);

}  // namespace gravclock
