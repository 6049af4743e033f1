// Test-only oracles, kept independent of the library's gate kernels: dense
// unitaries assembled from Kronecker products, brute-force inner products and
// matrix exponentials via eigendecomposition of the oracle matrices.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>
#include <numbers>
#include <random>

#include "qte/circuit.hpp"
#include "qte/pauli.hpp"

namespace oracle {

using Cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Matrix identity(int qubits) {
  return Matrix::Identity(Eigen::Index(1) << qubits, Eigen::Index(1) << qubits);
}

// Embeds a single-qubit operator on qubit q of an n-qubit register. Qubit 0
// is the least significant index, i.e. the rightmost Kronecker factor.
inline Matrix embed(const Matrix& u, int q, int n) {
  return kron(identity(n - q - 1), kron(u, identity(q)));
}

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << Cx(0, 0), Cx(0, -1), Cx(0, 1), Cx(0, 0);
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix pauli(char letter) {
  switch (letter) {
    case 'X': return pauli_x();
    case 'Y': return pauli_y();
    case 'Z': return pauli_z();
    default: return Matrix::Identity(2, 2);
  }
}

inline Matrix rotation(char axis, double angle) {
  const Matrix generator = pauli(axis);
  return std::cos(angle / 2) * Matrix::Identity(2, 2) -
         Cx(0, 1) * std::sin(angle / 2) * generator;
}

// Full unitary of one gate on an n-qubit register.
inline Matrix gate_matrix(const qte::Gate& gate, const Eigen::VectorXd& theta, int n) {
  switch (gate.kind) {
    case qte::GateKind::RX: return embed(rotation('X', theta[gate.slot]), gate.q0, n);
    case qte::GateKind::RY: return embed(rotation('Y', theta[gate.slot]), gate.q0, n);
    case qte::GateKind::RZ: return embed(rotation('Z', theta[gate.slot]), gate.q0, n);
    case qte::GateKind::RZZ: {
      const Matrix zz = embed(pauli_z(), gate.q0, n) * embed(pauli_z(), gate.q1, n);
      const double angle = theta[gate.slot];
      return std::cos(angle / 2) * identity(n) - Cx(0, 1) * std::sin(angle / 2) * zz;
    }
    case qte::GateKind::CX: {
      Matrix p0(2, 2), p1(2, 2);
      p0 << 1, 0, 0, 0;
      p1 << 0, 0, 0, 1;
      return embed(p0, gate.q0, n) +
             embed(p1, gate.q0, n) * embed(pauli_x(), gate.q1, n);
    }
  }
  throw std::logic_error("unknown gate");
}

inline Matrix circuit_unitary(const qte::ParameterizedCircuit& circuit,
                              const Eigen::VectorXd& theta) {
  const int n = circuit.n_qubits();
  Matrix u = identity(n);
  for (const auto& gate : circuit.gates()) {
    u = gate_matrix(gate, theta, n) * u;  // first gate acts first
  }
  return u;
}

inline Vector circuit_state(const qte::ParameterizedCircuit& circuit,
                            const Eigen::VectorXd& theta) {
  Vector zero = Vector::Zero(Eigen::Index(1) << circuit.n_qubits());
  zero[0] = 1.0;
  return circuit_unitary(circuit, theta) * zero;
}

inline Matrix dense_pauli_sum(const qte::PauliSum& sum) {
  Matrix h = Matrix::Zero(Eigen::Index(1) << sum.n_qubits, Eigen::Index(1) << sum.n_qubits);
  for (const auto& term : sum.terms) {
    Matrix word = Matrix::Identity(1, 1);
    for (int q = sum.n_qubits - 1; q >= 0; --q) {
      word = kron(word, pauli(term.ops[q]));
    }
    h += term.coefficient * word;
  }
  return h;
}

// exp(scale * H) psi for Hermitian H, brute force.
inline Vector evolve_dense(const Matrix& h, const Vector& psi, Cx scale) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  Vector coeffs = solver.eigenvectors().adjoint() * psi;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs[k] *= std::exp(scale * solver.eigenvalues()[k]);
  }
  return solver.eigenvectors() * coeffs;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Eigen::VectorXd random_angles(int count, std::mt19937_64& engine) {
  std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
  Eigen::VectorXd theta(count);
  for (int k = 0; k < count; ++k) theta[k] = dist(engine);
  return theta;
}

inline Vector random_state(int n, std::mt19937_64& engine) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector psi(Eigen::Index(1) << n);
  for (Eigen::Index k = 0; k < psi.size(); ++k) psi[k] = Cx(dist(engine), dist(engine));
  psi.normalize();
  return psi;
}

}  // namespace oracle
