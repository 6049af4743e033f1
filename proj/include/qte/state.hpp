// Dense statevector kernels for n-qubit simulation.
//
// Amplitude indexing is little-endian: qubit 0 is the least significant bit
// of the basis index. Rotation convention is R_P(theta) = exp(-i theta P / 2),
// so the pi/2 parameter-shift rule is exact for every rotation gate.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>

namespace qte {

template <typename Real = double>
using Complex = std::complex<Real>;

template <typename Real = double>
using StateVector = Eigen::Vector<std::complex<Real>, Eigen::Dynamic>;

using StateVectorXcd = StateVector<double>;

inline constexpr int max_qubits = 20;

inline Eigen::Index state_dimension(int n_qubits) {
  if (n_qubits < 1 || n_qubits > max_qubits) {
    throw std::invalid_argument("qubit count out of range [1, 20]");
  }
  return Eigen::Index(1) << n_qubits;
}

// Number of qubits of a state; rejects vectors whose length is not a power
// of two.
template <typename Derived>
int num_qubits(const Eigen::MatrixBase<Derived>& psi) {
  const Eigen::Index dim = psi.size();
  int n = 0;
  while ((Eigen::Index(1) << n) < dim && n <= max_qubits) ++n;
  if ((Eigen::Index(1) << n) != dim) {
    throw std::invalid_argument("state length is not a power of two");
  }
  return n;
}

template <typename Real = double>
StateVector<Real> zero_state(int n_qubits) {
  StateVector<Real> psi = StateVector<Real>::Zero(state_dimension(n_qubits));
  psi[0] = Complex<Real>(1, 0);
  return psi;
}

template <typename Real>
void check_same_dimension(const StateVector<Real>& a, const StateVector<Real>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("state dimension mismatch");
  }
}

template <typename Real>
Complex<Real> inner_product(const StateVector<Real>& a, const StateVector<Real>& b) {
  check_same_dimension(a, b);
  return a.dot(b);  // Eigen's dot conjugates the left argument
}

// |<a|b>|^2
template <typename Real>
Real state_fidelity(const StateVector<Real>& a, const StateVector<Real>& b) {
  return std::norm(inner_product(a, b));
}

template <typename Real>
void normalize(StateVector<Real>& psi) {
  const Real n = psi.norm();
  if (n <= Real(0)) throw std::runtime_error("cannot normalize zero state");
  psi /= n;
}

namespace detail {

// Applies a 2x2 matrix to the amplitude pairs split by qubit q.
template <typename Real>
void apply_one_qubit(StateVector<Real>& psi, int q, Complex<Real> u00,
                     Complex<Real> u01, Complex<Real> u10, Complex<Real> u11) {
  const Eigen::Index dim = psi.size();
  const Eigen::Index stride = Eigen::Index(1) << q;
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index k = base; k < base + stride; ++k) {
      const Complex<Real> a0 = psi[k];
      const Complex<Real> a1 = psi[k + stride];
      psi[k] = u00 * a0 + u01 * a1;
      psi[k + stride] = u10 * a0 + u11 * a1;
    }
  }
}

inline void check_qubit(int q, Eigen::Index dim) {
  if (q < 0 || (Eigen::Index(1) << q) >= dim) {
    throw std::invalid_argument("qubit index out of range");
  }
}

}  // namespace detail

template <typename Real>
void apply_rx(StateVector<Real>& psi, int q, Real angle) {
  detail::check_qubit(q, psi.size());
  const Real c = std::cos(angle / 2), s = std::sin(angle / 2);
  detail::apply_one_qubit<Real>(psi, q, {c, 0}, {0, -s}, {0, -s}, {c, 0});
}

template <typename Real>
void apply_ry(StateVector<Real>& psi, int q, Real angle) {
  detail::check_qubit(q, psi.size());
  const Real c = std::cos(angle / 2), s = std::sin(angle / 2);
  detail::apply_one_qubit<Real>(psi, q, {c, 0}, {-s, 0}, {s, 0}, {c, 0});
}

template <typename Real>
void apply_rz(StateVector<Real>& psi, int q, Real angle) {
  detail::check_qubit(q, psi.size());
  const Complex<Real> phase0(std::cos(angle / 2), -std::sin(angle / 2));
  const Complex<Real> phase1 = std::conj(phase0);
  const Eigen::Index stride = Eigen::Index(1) << q;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    psi[i] *= (i & stride) ? phase1 : phase0;
  }
}

// exp(-i angle Z(q0) Z(q1) / 2): diagonal phase by the parity of the two bits.
template <typename Real>
void apply_rzz(StateVector<Real>& psi, int q0, int q1, Real angle) {
  detail::check_qubit(q0, psi.size());
  detail::check_qubit(q1, psi.size());
  if (q0 == q1) throw std::invalid_argument("rzz requires distinct qubits");
  const Complex<Real> even(std::cos(angle / 2), -std::sin(angle / 2));
  const Complex<Real> odd = std::conj(even);
  const Eigen::Index m0 = Eigen::Index(1) << q0, m1 = Eigen::Index(1) << q1;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const bool parity = bool(i & m0) != bool(i & m1);
    psi[i] *= parity ? odd : even;
  }
}

template <typename Real>
void apply_cx(StateVector<Real>& psi, int control, int target) {
  detail::check_qubit(control, psi.size());
  detail::check_qubit(target, psi.size());
  if (control == target) throw std::invalid_argument("cx requires distinct qubits");
  const Eigen::Index mc = Eigen::Index(1) << control;
  const Eigen::Index mt = Eigen::Index(1) << target;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if ((i & mc) && !(i & mt)) {
      std::swap(psi[i], psi[i | mt]);
    }
  }
}

template <typename Real>
void apply_hadamard(StateVector<Real>& psi, int q) {
  detail::check_qubit(q, psi.size());
  const Real h = Real(1) / std::numbers::sqrt2_v<Real>;
  detail::apply_one_qubit<Real>(psi, q, {h, 0}, {h, 0}, {h, 0}, {-h, 0});
}

// S^dagger = diag(1, -i), used to rotate into the Y measurement basis.
template <typename Real>
void apply_s_dagger(StateVector<Real>& psi, int q) {
  detail::check_qubit(q, psi.size());
  const Eigen::Index stride = Eigen::Index(1) << q;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (i & stride) psi[i] *= Complex<Real>(0, -1);
  }
}

// Plain Pauli actions, used when inserting rotation generators for
// derivative states.
template <typename Real>
void apply_pauli_x(StateVector<Real>& psi, int q) {
  detail::check_qubit(q, psi.size());
  detail::apply_one_qubit<Real>(psi, q, {0, 0}, {1, 0}, {1, 0}, {0, 0});
}

template <typename Real>
void apply_pauli_y(StateVector<Real>& psi, int q) {
  detail::check_qubit(q, psi.size());
  detail::apply_one_qubit<Real>(psi, q, {0, 0}, {0, -1}, {0, 1}, {0, 0});
}

template <typename Real>
void apply_pauli_z(StateVector<Real>& psi, int q) {
  detail::check_qubit(q, psi.size());
  const Eigen::Index stride = Eigen::Index(1) << q;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (i & stride) psi[i] = -psi[i];
  }
}

template <typename Real>
void apply_pauli_zz(StateVector<Real>& psi, int q0, int q1) {
  detail::check_qubit(q0, psi.size());
  detail::check_qubit(q1, psi.size());
  const Eigen::Index m0 = Eigen::Index(1) << q0, m1 = Eigen::Index(1) << q1;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (bool(i & m0) != bool(i & m1)) psi[i] = -psi[i];
  }
}

}  // namespace qte
