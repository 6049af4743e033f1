// Pauli-sum Hamiltonians: construction, expectation values, dense forms and
// the exact real/imaginary time-evolution oracle.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qte/state.hpp"

namespace qte {

// One weighted Pauli word. ops[q] in {I, X, Y, Z} refers to qubit q
// (little-endian, matching the state indexing).
struct PauliString {
  std::string ops;
  double coefficient = 1.0;
};

struct PauliSum {
  int n_qubits = 0;
  std::vector<PauliString> terms;

  int n_terms() const { return int(terms.size()); }

  void check() const {
    if (terms.empty()) throw std::invalid_argument("PauliSum needs at least one term");
    for (const auto& t : terms) {
      if (int(t.ops.size()) != n_qubits) {
        throw std::invalid_argument("Pauli string length must equal n_qubits");
      }
      for (char c : t.ops) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
          throw std::invalid_argument("Pauli letters must be one of I,X,Y,Z");
        }
      }
    }
  }
};

enum class LatticeTopology { Circle, Chain };

struct HeisenbergSpec {
  int n = 0;
  LatticeTopology topology = LatticeTopology::Circle;
  double coupling = 0.25;   // J
  double field = -1.0;      // transverse field strength g_field
};

// H = J sum_<ij> (X_i X_j + Y_i Y_j + Z_i Z_j) + g_field sum_i Z_i.
// For n = 2 the circle's two edges coincide; the duplicate is collapsed so
// that the n = 2 circle and chain share one edge set.
inline PauliSum heisenberg(const HeisenbergSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("heisenberg requires n >= 2");
  std::vector<std::pair<int, int>> edges;
  const int n_edges = spec.topology == LatticeTopology::Circle && spec.n > 2
                          ? spec.n
                          : spec.n - 1;
  for (int e = 0; e < n_edges; ++e) edges.emplace_back(e, (e + 1) % spec.n);

  PauliSum sum;
  sum.n_qubits = spec.n;
  for (const auto& [i, j] : edges) {
    for (char p : {'X', 'Y', 'Z'}) {
      std::string ops(spec.n, 'I');
      ops[i] = p;
      ops[j] = p;
      sum.terms.push_back({std::move(ops), spec.coupling});
    }
  }
  for (int i = 0; i < spec.n; ++i) {
    std::string ops(spec.n, 'I');
    ops[i] = 'Z';
    sum.terms.push_back({std::move(ops), spec.field});
  }
  return sum;
}

// Average magnetization (1/n) sum_i P_i for P in {X, Z}.
inline PauliSum average_magnetization(int n_qubits, char pauli) {
  PauliSum sum;
  sum.n_qubits = n_qubits;
  for (int i = 0; i < n_qubits; ++i) {
    std::string ops(n_qubits, 'I');
    ops[i] = pauli;
    sum.terms.push_back({std::move(ops), 1.0 / n_qubits});
  }
  return sum;
}

// P|psi> for a single Pauli word (coefficient excluded). X/Y letters flip
// their bit; Y contributes i*(-1)^bit and Z contributes (-1)^bit.
template <typename Real>
StateVector<Real> apply_pauli_word(const PauliString& term, const StateVector<Real>& psi) {
  const int n = num_qubits(psi);
  if (int(term.ops.size()) != n) {
    throw std::invalid_argument("Pauli string / state dimension mismatch");
  }
  Eigen::Index flip_mask = 0, y_mask = 0, z_mask = 0;
  int n_y = 0;
  for (int q = 0; q < n; ++q) {
    const Eigen::Index bit = Eigen::Index(1) << q;
    switch (term.ops[q]) {
      case 'X': flip_mask |= bit; break;
      case 'Y': flip_mask |= bit; y_mask |= bit; ++n_y; break;
      case 'Z': z_mask |= bit; break;
      default: break;
    }
  }
  static const Complex<Real> i_powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex<Real> y_factor = i_powers[n_y % 4];

  StateVector<Real> out(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const int sign_bits = std::popcount(static_cast<std::uint64_t>(i & (y_mask | z_mask)));
    const Real sign = (sign_bits % 2 == 0) ? Real(1) : Real(-1);
    out[i ^ flip_mask] = sign * y_factor * psi[i];
  }
  return out;
}

// <psi|P|psi> for one Pauli word, always real for unit-coefficient words.
template <typename Real>
Real pauli_word_expectation(const PauliString& term, const StateVector<Real>& psi) {
  return inner_product(psi, apply_pauli_word(term, psi)).real();
}

template <typename Real>
StateVector<Real> apply_pauli_sum(const PauliSum& sum, const StateVector<Real>& psi) {
  sum.check();
  StateVector<Real> out = StateVector<Real>::Zero(psi.size());
  for (const auto& term : sum.terms) {
    out += Complex<Real>(term.coefficient, 0) * apply_pauli_word(term, psi);
  }
  return out;
}

template <typename Real>
Real expectation(const PauliSum& sum, const StateVector<Real>& psi) {
  const Complex<Real> value = inner_product(psi, apply_pauli_sum(sum, psi));
  if (std::abs(value.imag()) > Real(1e-10)) {
    throw std::runtime_error("expectation has a non-negligible imaginary part");
  }
  return value.real();
}

// Var(H) = <H^2> - <H>^2, clamped to zero within -1e-10.
template <typename Real>
Real variance(const PauliSum& sum, const StateVector<Real>& psi) {
  const StateVector<Real> h_psi = apply_pauli_sum(sum, psi);
  const Real second_moment = h_psi.squaredNorm();
  const Real energy = inner_product(psi, h_psi).real();
  Real var = second_moment - energy * energy;
  if (var < Real(-1e-10)) throw std::runtime_error("variance below tolerance");
  return var < Real(0) ? Real(0) : var;
}

inline constexpr int max_dense_qubits = 14;

inline Eigen::MatrixXcd to_dense(const PauliSum& sum) {
  sum.check();
  if (sum.n_qubits > max_dense_qubits) {
    throw std::invalid_argument("dense form limited to 14 qubits");
  }
  const Eigen::Index dim = Eigen::Index(1) << sum.n_qubits;
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
  StateVectorXcd basis = StateVectorXcd::Zero(dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    basis[col] = 1.0;
    mat.col(col) = apply_pauli_sum(sum, basis);
    basis[col] = 0.0;
  }
  return mat;
}

struct EnergyExtremes {
  double min = 0.0;
  double max = 0.0;
};

enum class ExtremesMode { Exact, CoefficientBound };

// Extreme eigenvalues (dense diagonalization, n <= 14) or the +-sum|c_i|
// bound which works at any size.
inline EnergyExtremes energy_extremes(const PauliSum& sum,
                                      ExtremesMode mode = ExtremesMode::Exact) {
  if (mode == ExtremesMode::CoefficientBound || sum.n_qubits > max_dense_qubits) {
    double bound = 0.0;
    for (const auto& t : sum.terms) bound += std::abs(t.coefficient);
    return {-bound, bound};
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense(sum),
                                                         Eigen::EigenvaluesOnly);
  const auto& vals = solver.eigenvalues();
  return {vals.minCoeff(), vals.maxCoeff()};
}

enum class EvolutionMode { Real, Imaginary };

// Exact evolution through one cached dense eigendecomposition; serves every
// query time of a trajectory comparison.
class ExactEvolver {
 public:
  explicit ExactEvolver(const PauliSum& hamiltonian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense(hamiltonian));
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("eigendecomposition failed");
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
  }

  // Real mode: exp(-i t H) psi0. Imaginary mode: exp(-t H) psi0, renormalized;
  // the spectrum is shifted by its minimum before exponentiating so large t
  // cannot overflow.
  StateVectorXcd evolve(const StateVectorXcd& psi0, double t, EvolutionMode mode) const {
    if (psi0.size() != eigenvectors_.rows()) {
      throw std::invalid_argument("state dimension mismatch");
    }
    if (mode == EvolutionMode::Imaginary && t < 0) {
      throw std::invalid_argument("imaginary evolution requires t >= 0");
    }
    Eigen::VectorXcd coeffs = eigenvectors_.adjoint() * psi0;
    if (mode == EvolutionMode::Real) {
      for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs[k] *= std::polar(1.0, -t * eigenvalues_[k]);
      }
    } else {
      const double shift = eigenvalues_.minCoeff();
      for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs[k] *= std::exp(-t * (eigenvalues_[k] - shift));
      }
    }
    StateVectorXcd psi = eigenvectors_ * coeffs;
    normalize(psi);
    return psi;
  }

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
};

inline StateVectorXcd exact_evolve(const PauliSum& hamiltonian, const StateVectorXcd& psi0,
                                   double t, EvolutionMode mode) {
  return ExactEvolver(hamiltonian).evolve(psi0, t, mode);
}

}  // namespace qte
