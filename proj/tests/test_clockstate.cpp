#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "gravclock/clockstate.hpp"
#include "gravclock/errors.hpp"

using namespace gravclock;
using cd = std::complex<double>;

namespace {

Labels qubits(std::initializer_list<const char*> names) {
    Labels l;
    for (const char* n : names) l.push_back({n, 2});
    return l;
}

Eigen::VectorXcd random_vector(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = cd(g(rng), g(rng));
    return v.normalized();
}

}  // namespace

TEST_CASE("tensor ordering puts the first label most significant") {
    const StateVector parts[] = {StateVector::basis("A", 2, 1), StateVector::basis("B", 3, 2)};
    const auto s = tensor_state(parts);
    REQUIRE(s.amplitudes.size() == 6);
    CHECK(s.amplitudes[1 * 3 + 2] == cd(1.0, 0.0));
    CHECK(s.amplitudes.norm() == doctest::Approx(1.0));
    CHECK(s.labels[0].name == "A");
    CHECK(total_dimension(s.labels) == 6);
}

TEST_CASE("partial trace against explicit index sums") {
    std::mt19937_64 rng(17);
    const auto psi = StateVector::make(random_vector(rng, 8), qubits({"A", "B", "C"}));
    const auto rb = reduced_density(psi, {"B"});
    Eigen::Matrix2cd expected = Eigen::Matrix2cd::Zero();
    for (int b = 0; b < 2; ++b)
        for (int b2 = 0; b2 < 2; ++b2)
            for (int a = 0; a < 2; ++a)
                for (int c = 0; c < 2; ++c)
                    expected(b, b2) += psi.amplitudes[4 * a + 2 * b + c] * std::conj(psi.amplitudes[4 * a + 2 * b2 + c]);
    CHECK((rb.matrix - expected).norm() < 1e-14);

    // kept subsystems stay in original order regardless of request order
    const auto rca = reduced_density(psi, {"C", "A"});
    REQUIRE(rca.labels.size() == 2);
    CHECK(rca.labels[0].name == "A");
    CHECK(rca.labels[1].name == "C");
    Eigen::Matrix4cd eac = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int b = 0; b < 2; ++b) {
                const int a1 = i / 2, c1 = i % 2, a2 = j / 2, c2 = j % 2;
                eac(i, j) += psi.amplitudes[4 * a1 + 2 * b + c1] * std::conj(psi.amplitudes[4 * a2 + 2 * b + c2]);
            }
    CHECK((rca.matrix - eac).norm() < 1e-14);
    CHECK(rca.is_valid());
}

TEST_CASE("Bell and product states") {
    Eigen::VectorXcd bell(4);
    bell << 1, 0, 0, 1;
    bell /= std::sqrt(2.0);
    const auto rho = DensityMatrix::pure(StateVector::make(bell, qubits({"S", "P"})));
    CHECK(von_neumann_entropy(reduced_density(rho, {"S"})) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(von_neumann_entropy(reduced_density(rho, {"S"}), EntropyBase::nats) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(concurrence(rho) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(entanglement_of_formation(rho) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(von_neumann_entropy(rho) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rho.purity() == doctest::Approx(1.0));

    const StateVector parts[] = {StateVector::basis("S", 2, 0), StateVector::basis("P", 2, 1)};
    const auto prod = DensityMatrix::pure(tensor_state(parts));
    CHECK(concurrence(prod) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(entanglement_of_formation(prod) == 0.0);
    CHECK(von_neumann_entropy(reduced_density(prod, {"P"})) == 0.0);
}

TEST_CASE("pure two-qubit states: concurrence and formation oracles") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const auto v = random_vector(rng, 4);
        const auto rho = DensityMatrix::pure(StateVector::make(v, qubits({"S", "P"})));
        const double c = 2.0 * std::abs(v[0] * v[3] - v[1] * v[2]);
        CHECK(concurrence(rho) == doctest::Approx(c).epsilon(1e-10));
        // for pure states formation equals the reduced entropy
        const double s = von_neumann_entropy(reduced_density(rho, {"S"}));
        CHECK(entanglement_of_formation(rho) == doctest::Approx(s).epsilon(1e-9));
    }
}

TEST_CASE("Werner state concurrence") {
    Eigen::Vector4cd singlet(0, 1, -1, 0);
    singlet /= std::sqrt(2.0);
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.9, 1.0}) {
        Eigen::Matrix4cd m = p * singlet * singlet.adjoint() + (1 - p) / 4.0 * Eigen::Matrix4cd::Identity();
        const auto rho = DensityMatrix::make(m, qubits({"S", "P"}));
        CHECK(rho.is_valid());
        CHECK(concurrence(rho) == doctest::Approx(std::max(0.0, (3 * p - 1) / 2)).epsilon(1e-10));
    }
}

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
    CHECK(binary_entropy(0.5, EntropyBase::nats) == doctest::Approx(std::log(2.0)));
    CHECK(binary_entropy(0.11) == doctest::Approx(binary_entropy(0.89)).epsilon(1e-14));
    CHECK(entanglement_of_formation_from_concurrence(0.0) == 0.0);
    CHECK(entanglement_of_formation_from_concurrence(1.0) == doctest::Approx(1.0));
}

TEST_CASE("witness bounds") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 1000; ++i) {
        const StateVector parts[] = {StateVector::make(random_vector(rng, 2), {{"S", 2}}),
                                     StateVector::make(random_vector(rng, 2), {{"P", 2}})};
        CHECK(witness_value(DensityMatrix::pure(tensor_state(parts))) <= 1.0 + 1e-9);
    }
    // X(x)Z + Z(x)X has a top eigenvalue of 2 on an entangled state
    Eigen::Matrix4cd op;
    op << 0, 1, 1, 0,
          1, 0, 0, -1,
          1, 0, 0, -1,
          0, -1, -1, 0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(op);
    CHECK(es.eigenvalues()[3] == doctest::Approx(2.0));
    const auto top = StateVector::make(es.eigenvectors().col(3), qubits({"S", "P"}));
    const auto rho = DensityMatrix::pure(top);
    CHECK(witness_value(rho) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(concurrence(rho) > 0.5);
}

TEST_CASE("validity and errors") {
    Eigen::Matrix2cd bad;
    bad << 1.0, 0.0, 0.0, 0.5;
    CHECK_FALSE(DensityMatrix::make(bad, qubits({"A"})).is_valid());
    Eigen::Matrix2cd neg;
    neg << 1.5, 0.0, 0.0, -0.5;
    CHECK_FALSE(DensityMatrix::make(neg, qubits({"A"})).is_valid());
    Eigen::Matrix2cd nonherm;
    nonherm << 0.5, 0.3, 0.0, 0.5;
    CHECK_FALSE(DensityMatrix::make(nonherm, qubits({"A"})).is_valid());

    CHECK_THROWS_AS(StateVector::make(Eigen::VectorXcd::Ones(3), qubits({"A"})), DimensionMismatch);
    CHECK_THROWS_AS(StateVector::basis("A", 2, 2), DimensionMismatch);
    CHECK_THROWS_AS(DensityMatrix::make(Eigen::MatrixXcd::Identity(3, 3), qubits({"A"})), DimensionMismatch);
    const auto psi = StateVector::basis("A", 2, 0);
    CHECK_THROWS_AS(reduced_density(psi, {"Z"}), UnknownLabel);
    CHECK_THROWS_AS(concurrence(DensityMatrix::pure(psi)), DimensionMismatch);
    CHECK_THROWS_AS(tensor_state({}), DimensionMismatch);
}
