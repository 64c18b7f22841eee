#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace gravclock {

struct Subsystem {
    std::string name;
    int dim = 2;
};

using Labels = std::vector<Subsystem>;

// Product of subsystem dimensions.
int total_dimension(const Labels& labels);

// Pure state over labelled subsystems. The first label is the most
// significant factor of the Kronecker ordering.
struct StateVector {
    Eigen::VectorXcd amplitudes;
    Labels labels;

    // Validates dimensions; does not normalise.
    static StateVector make(Eigen::VectorXcd amplitudes, Labels labels);
    // |index> of a single subsystem.
    static StateVector basis(const std::string& name, int dim, int index);

    double norm() const { return amplitudes.norm(); }
};

struct DensityMatrix {
    Eigen::MatrixXcd matrix;
    Labels labels;

    static DensityMatrix make(Eigen::MatrixXcd matrix, Labels labels);
    static DensityMatrix pure(const StateVector& psi);

    // Hermitian and unit trace within tol, min eigenvalue above -psd_tol.
    bool is_valid(double tol = 1e-12, double psd_tol = 1e-10) const;
    double purity() const;
};

enum class EntropyBase { bits, nats };

StateVector tensor_state(std::span<const StateVector> parts);
DensityMatrix tensor_density(const DensityMatrix& a, const DensityMatrix& b);

// Partial trace over every subsystem not named in keep. Kept subsystems stay
// in their original order. Throws UnknownLabel for names not present.
DensityMatrix reduced_density(const DensityMatrix& rho, const std::vector<std::string>& keep);
DensityMatrix reduced_density(const StateVector& psi, const std::vector<std::string>& keep);

// Eigenvalues at or below 1e-12 contribute nothing.
double von_neumann_entropy(const DensityMatrix& rho, EntropyBase base = EntropyBase::bits);

// h(x) = -x log x - (1-x) log(1-x).
double binary_entropy(double x, EntropyBase base = EntropyBase::bits);

// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

// h((1 + sqrt(1 - C^2)) / 2) for a two-qubit state.
double entanglement_of_formation(const DensityMatrix& rho, EntropyBase base = EntropyBase::bits);
double entanglement_of_formation_from_concurrence(double c, EntropyBase base = EntropyBase::bits);

// |<X^S X^P + Z^S Z^P>| on the source/path pair. The source qubit is in the
// {|0>, |1>} basis; the path qubit is in the {|L'>, |R'>} output basis of
// the second beam splitter, where X^P = |L'><L'| - |R'><R'| and
// Z^P = |L><L| - |R><R| becomes sigma_x.
double witness_value(const DensityMatrix& rho);

}  // namespace gravclock
