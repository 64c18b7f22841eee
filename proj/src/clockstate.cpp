#include "gravclock/clockstate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "gravclock/errors.hpp"

namespace gravclock {

namespace {

using cd = std::complex<double>;
constexpr double kEigenFloor = 1e-12;

// Mixed-radix digits of a flat index, most significant first.
std::vector<int> digits_of(int index, const Labels& labels) {
    std::vector<int> out(labels.size());
    for (std::size_t i = labels.size(); i-- > 0;) {
        out[i] = index % labels[i].dim;
        index /= labels[i].dim;
    }
    return out;
}

Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd pauli_y() {
    Eigen::Matrix2cd m;
    m << 0, cd(0, -1), cd(0, 1), 0;
    return m;
}

Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

void require_two_qubits(const DensityMatrix& rho) {
    if (rho.labels.size() != 2 || rho.labels[0].dim != 2 || rho.labels[1].dim != 2) {
        throw DimensionMismatch("expected a density matrix over two qubits");
    }
}

Eigen::VectorXd clamped_eigenvalues(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace

int total_dimension(const Labels& labels) {
    int d = 1;
    for (const auto& s : labels) {
        if (s.dim < 1) throw DimensionMismatch("subsystem '" + s.name + "' has dimension < 1");
        d *= s.dim;
    }
    return d;
}

StateVector StateVector::make(Eigen::VectorXcd amplitudes, Labels labels) {
    if (amplitudes.size() != total_dimension(labels)) {
        throw DimensionMismatch("amplitude count does not match subsystem dimensions");
    }
    return {std::move(amplitudes), std::move(labels)};
}

StateVector StateVector::basis(const std::string& name, int dim, int index) {
    if (index < 0 || index >= dim) throw DimensionMismatch("basis index out of range");
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(dim);
    a(index) = 1.0;
    return make(std::move(a), {{name, dim}});
}

DensityMatrix DensityMatrix::make(Eigen::MatrixXcd matrix, Labels labels) {
    const int d = total_dimension(labels);
    if (matrix.rows() != d || matrix.cols() != d) {
        throw DimensionMismatch("density matrix size does not match subsystem dimensions");
    }
    return {std::move(matrix), std::move(labels)};
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    return make(psi.amplitudes * psi.amplitudes.adjoint(), psi.labels);
}

bool DensityMatrix::is_valid(double tol, double psd_tol) const {
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(matrix.trace() - cd(1.0)) > tol) return false;
    return clamped_eigenvalues(matrix).minCoeff() > -psd_tol;
}

double DensityMatrix::purity() const { return (matrix * matrix).trace().real(); }

StateVector tensor_state(std::span<const StateVector> parts) {
    if (parts.empty()) throw DimensionMismatch("tensor product of no states");
    Eigen::VectorXcd acc = parts.front().amplitudes;
    Labels labels = parts.front().labels;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto& b = parts[i].amplitudes;
        Eigen::VectorXcd next(acc.size() * b.size());
        for (Eigen::Index k = 0; k < acc.size(); ++k) next.segment(k * b.size(), b.size()) = acc(k) * b;
        acc = std::move(next);
        labels.insert(labels.end(), parts[i].labels.begin(), parts[i].labels.end());
    }
    return StateVector::make(std::move(acc), std::move(labels));
}

DensityMatrix tensor_density(const DensityMatrix& a, const DensityMatrix& b) {
    Labels labels = a.labels;
    labels.insert(labels.end(), b.labels.begin(), b.labels.end());
    return DensityMatrix::make(kron(a.matrix, b.matrix), std::move(labels));
}

DensityMatrix reduced_density(const DensityMatrix& rho, const std::vector<std::string>& keep) {
    std::vector<bool> kept(rho.labels.size(), false);
    for (const auto& name : keep) {
        auto it = std::find_if(rho.labels.begin(), rho.labels.end(),
                               [&](const Subsystem& s) { return s.name == name; });
        if (it == rho.labels.end()) throw UnknownLabel("no subsystem named '" + name + "'");
        kept[static_cast<std::size_t>(it - rho.labels.begin())] = true;
    }
    Labels out_labels;
    Labels traced_labels;
    for (std::size_t i = 0; i < rho.labels.size(); ++i) {
        (kept[i] ? out_labels : traced_labels).push_back(rho.labels[i]);
    }
    const int d = total_dimension(rho.labels);
    const int dk = total_dimension(out_labels);

    // Flat index -> (kept index, traced index).
    std::vector<int> kept_index(d);
    std::vector<int> traced_index(d);
    for (int i = 0; i < d; ++i) {
        const auto dig = digits_of(i, rho.labels);
        int ki = 0;
        int ti = 0;
        for (std::size_t s = 0; s < dig.size(); ++s) {
            if (kept[s]) {
                ki = ki * rho.labels[s].dim + dig[s];
            } else {
                ti = ti * rho.labels[s].dim + dig[s];
            }
        }
        kept_index[i] = ki;
        traced_index[i] = ti;
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += rho.matrix(i, j);
        }
    }
    return DensityMatrix::make(std::move(out), std::move(out_labels));
}

DensityMatrix reduced_density(const StateVector& psi, const std::vector<std::string>& keep) {
    return reduced_density(DensityMatrix::pure(psi), keep);
}

double von_neumann_entropy(const DensityMatrix& rho, EntropyBase base) {
    const auto ev = clamped_eigenvalues(rho.matrix);
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double l = ev(i);
        if (l > kEigenFloor) s -= l * std::log(l);
    }
    return base == EntropyBase::bits ? s / std::numbers::ln2 : s;
}

double binary_entropy(double x, EntropyBase base) {
    auto term = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
    const double h = term(x) + term(1.0 - x);
    return base == EntropyBase::bits ? h / std::numbers::ln2 : h;
}

double concurrence(const DensityMatrix& rho) {
    require_two_qubits(rho);
    const Eigen::MatrixXcd yy = kron(pauli_y(), pauli_y());

    // Wootters' lambdas are the singular values of tau_ij = v_i^T (Y(x)Y) v_j
    // with v_i = sqrt(p_i) e_i over the support of rho. Working with the
    // support avoids square roots of round-off eigenvalues.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix);
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < 4; ++i) {
        if (es.eigenvalues()(i) > 1e-14) support.push_back(i);
    }
    const auto r = static_cast<Eigen::Index>(support.size());
    if (r == 0) return 0.0;
    Eigen::MatrixXcd v(4, r);
    for (Eigen::Index k = 0; k < r; ++k) {
        v.col(k) = std::sqrt(es.eigenvalues()(support[k])) * es.eigenvectors().col(support[k]);
    }
    const Eigen::MatrixXcd tau = v.transpose() * yy * v;
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(4);
    lam.head(r) = Eigen::JacobiSVD<Eigen::MatrixXcd>(tau).singularValues();
    std::sort(lam.data(), lam.data() + lam.size(), std::greater<>());
    return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

double entanglement_of_formation_from_concurrence(double c, EntropyBase base) {
    const double cc = std::clamp(c, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - cc * cc)), base);
}

double entanglement_of_formation(const DensityMatrix& rho, EntropyBase base) {
    return entanglement_of_formation_from_concurrence(concurrence(rho), base);
}

double witness_value(const DensityMatrix& rho) {
    require_two_qubits(rho);
    // X^S = sigma_x, Z^S = sigma_z; in the {L', R'} basis X^P = sigma_z and
    // Z^P = sigma_x.
    const Eigen::MatrixXcd op = kron(pauli_x(), pauli_z()) + kron(pauli_z(), pauli_x());
    return std::abs((rho.matrix * op).trace());
}

}  // namespace gravclock
