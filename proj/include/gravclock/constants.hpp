#pragma once

namespace gravclock {

// SI values (CODATA 2018). Every formula takes its constants from here so
// that tests can run with exaggerated values such as c = G = hbar = 1.
struct PhysicalConstants {
    double c = 2.99792458e8;        // m/s
    double G = 6.67430e-11;         // m^3 kg^-1 s^-2
    double hbar = 1.054571817e-34;  // J s

    static PhysicalConstants si() { return {}; }
    static PhysicalConstants geometric() { return {1.0, 1.0, 1.0}; }

    // Throws DomainError unless all constants are finite and positive.
    void validate() const;
};

}  // namespace gravclock
