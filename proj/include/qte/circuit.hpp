// Layered Pauli-rotation ansatz circuits with unique, single-use parameters.
//
// Both families follow the same layout: one rotation layer, then `repetitions`
// blocks of (entangler, rotation layer). EfficientSU2 rotation layers are a
// column of RY (or RX) followed by a column of RZ; AlternatingXY layers are a
// single column that alternates between RX and RY, starting with RX.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qte/state.hpp"

namespace qte {

enum class GateKind { RX, RY, RZ, RZZ, CX };

struct Gate {
  GateKind kind;
  int q0 = 0;       // rotation target, or CX control / first RZZ qubit
  int q1 = -1;      // CX target / second RZZ qubit
  int slot = -1;    // index into the parameter vector; -1 for CX

  bool is_rotation() const { return kind != GateKind::CX; }
  bool is_two_qubit() const { return kind == GateKind::RZZ || kind == GateKind::CX; }
};

enum class AnsatzFamily { EfficientSU2, AlternatingXY };
enum class RotationPair { YZ, XZ };
enum class Entangler { PairwiseCX, ChainRZZ };

struct AnsatzSpec {
  int n_qubits = 0;
  int repetitions = 0;
  AnsatzFamily family = AnsatzFamily::EfficientSU2;
  RotationPair rotation_pair = RotationPair::YZ;  // EfficientSU2 only
  Entangler entangler = Entangler::PairwiseCX;
  bool final_rotation_layer = true;
};

// Slot bookkeeping for one rotation layer; second_* is empty for
// single-column layers (AlternatingXY).
struct RotationLayer {
  GateKind first_kind;
  std::vector<int> first_slots;   // per qubit, in qubit order
  GateKind second_kind = GateKind::RZ;
  std::vector<int> second_slots;
};

class ParameterizedCircuit {
 public:
  ParameterizedCircuit(AnsatzSpec spec, std::vector<Gate> gates, int n_params,
                       std::vector<RotationLayer> layers)
      : spec_(spec),
        gates_(std::move(gates)),
        n_params_(n_params),
        rotation_layers_(std::move(layers)) {}

  const AnsatzSpec& spec() const { return spec_; }
  int n_qubits() const { return spec_.n_qubits; }
  int n_params() const { return n_params_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<RotationLayer>& rotation_layers() const { return rotation_layers_; }

  template <typename Derived>
  StateVector<typename Derived::Scalar> run(const Eigen::MatrixBase<Derived>& theta) const {
    using Real = typename Derived::Scalar;
    const Eigen::VectorX<Real> bound = theta;
    check_parameters(bound.size());
    StateVector<Real> psi = zero_state<Real>(spec_.n_qubits);
    for (const Gate& g : gates_) apply_gate(psi, g, bound);
    return psi;
  }

  // Exact derivative state d|phi(theta)>/d theta_slot, obtained by inserting
  // the rotation generator times -i/2 right after the slot's gate. The result
  // is unnormalized (norm <= 1/2 for single-use Pauli rotations).
  template <typename Derived>
  StateVector<typename Derived::Scalar> derivative_state(
      const Eigen::MatrixBase<Derived>& theta, int slot) const {
    using Real = typename Derived::Scalar;
    const Eigen::VectorX<Real> bound = theta;
    check_parameters(bound.size());
    if (slot < 0 || slot >= n_params_) {
      throw std::invalid_argument("parameter slot out of range");
    }
    StateVector<Real> psi = zero_state<Real>(spec_.n_qubits);
    for (const Gate& g : gates_) {
      apply_gate(psi, g, bound);
      if (g.slot == slot) apply_generator(psi, g);
    }
    return psi;
  }

 private:
  void check_parameters(Eigen::Index len) const {
    if (len != n_params_) {
      throw std::invalid_argument("parameter vector length mismatch");
    }
  }

  template <typename Real>
  void apply_gate(StateVector<Real>& psi, const Gate& g,
                  const Eigen::VectorX<Real>& theta) const {
    switch (g.kind) {
      case GateKind::RX: apply_rx(psi, g.q0, theta[g.slot]); break;
      case GateKind::RY: apply_ry(psi, g.q0, theta[g.slot]); break;
      case GateKind::RZ: apply_rz(psi, g.q0, theta[g.slot]); break;
      case GateKind::RZZ: apply_rzz(psi, g.q0, g.q1, theta[g.slot]); break;
      case GateKind::CX: apply_cx(psi, g.q0, g.q1); break;
    }
  }

  template <typename Real>
  void apply_generator(StateVector<Real>& psi, const Gate& g) const {
    switch (g.kind) {
      case GateKind::RX: apply_pauli_x(psi, g.q0); break;
      case GateKind::RY: apply_pauli_y(psi, g.q0); break;
      case GateKind::RZ: apply_pauli_z(psi, g.q0); break;
      case GateKind::RZZ: apply_pauli_zz(psi, g.q0, g.q1); break;
      case GateKind::CX: throw std::logic_error("CX carries no parameter");
    }
    psi *= Complex<Real>(0, Real(-0.5));
  }

  AnsatzSpec spec_;
  std::vector<Gate> gates_;
  int n_params_;
  std::vector<RotationLayer> rotation_layers_;
};

namespace detail {

inline void emit_entangler(const AnsatzSpec& spec, std::vector<Gate>& gates, int& slot) {
  const int n = spec.n_qubits;
  if (spec.entangler == Entangler::PairwiseCX) {
    // Two sublayers of depth 1 each: (0,1),(2,3),... then (1,2),(3,4),...
    for (int q = 0; q + 1 < n; q += 2) gates.push_back({GateKind::CX, q, q + 1, -1});
    for (int q = 1; q + 1 < n; q += 2) gates.push_back({GateKind::CX, q, q + 1, -1});
  } else {
    for (int q = 0; q + 1 < n; ++q) gates.push_back({GateKind::RZZ, q, q + 1, slot++});
  }
}

inline RotationLayer emit_su2_layer(const AnsatzSpec& spec, std::vector<Gate>& gates,
                                    int& slot) {
  const int n = spec.n_qubits;
  RotationLayer layer;
  layer.first_kind =
      spec.rotation_pair == RotationPair::YZ ? GateKind::RY : GateKind::RX;
  layer.second_kind = GateKind::RZ;
  for (int q = 0; q < n; ++q) {
    gates.push_back({layer.first_kind, q, -1, slot});
    layer.first_slots.push_back(slot++);
  }
  for (int q = 0; q < n; ++q) {
    gates.push_back({GateKind::RZ, q, -1, slot});
    layer.second_slots.push_back(slot++);
  }
  return layer;
}

inline RotationLayer emit_alternating_layer(const AnsatzSpec& spec,
                                            std::vector<Gate>& gates, int& slot,
                                            int layer_index) {
  RotationLayer layer;
  layer.first_kind = (layer_index % 2 == 0) ? GateKind::RX : GateKind::RY;
  for (int q = 0; q < spec.n_qubits; ++q) {
    gates.push_back({layer.first_kind, q, -1, slot});
    layer.first_slots.push_back(slot++);
  }
  return layer;
}

}  // namespace detail

inline ParameterizedCircuit build_ansatz(const AnsatzSpec& spec) {
  if (spec.n_qubits < 2 || spec.n_qubits > max_qubits) {
    throw std::invalid_argument("ansatz requires 2 <= n_qubits <= 20");
  }
  if (spec.repetitions < 0) throw std::invalid_argument("repetitions must be >= 0");
  if (spec.family == AnsatzFamily::AlternatingXY &&
      spec.entangler != Entangler::ChainRZZ) {
    throw std::invalid_argument("AlternatingXY supports only the chain RZZ entangler");
  }

  std::vector<Gate> gates;
  std::vector<RotationLayer> layers;
  int slot = 0;
  // `repetitions` blocks of (entangler, rotation layer) follow the initial
  // rotation layer; without a final rotation layer the last block keeps only
  // its entangler.
  const int rotation_layers = spec.final_rotation_layer ? spec.repetitions + 1
                                                        : spec.repetitions;
  const int entangler_layers = spec.repetitions;
  if (rotation_layers < 1) {
    throw std::invalid_argument("ansatz must contain at least one rotation layer");
  }

  auto emit_rotation = [&](int index) {
    if (spec.family == AnsatzFamily::EfficientSU2) {
      layers.push_back(detail::emit_su2_layer(spec, gates, slot));
    } else {
      layers.push_back(detail::emit_alternating_layer(spec, gates, slot, index));
    }
  };

  emit_rotation(0);
  for (int rep = 0; rep < entangler_layers; ++rep) {
    detail::emit_entangler(spec, gates, slot);
    if (rep + 1 < rotation_layers) emit_rotation(rep + 1);
  }

  return ParameterizedCircuit(spec, std::move(gates), slot, std::move(layers));
}

inline ParameterizedCircuit build_ansatz(int n_qubits, int repetitions) {
  AnsatzSpec spec;
  spec.n_qubits = n_qubits;
  spec.repetitions = repetitions;
  return build_ansatz(spec);
}

enum class PauliBasis { X, Y, Z };

inline char basis_letter(PauliBasis b) {
  switch (b) {
    case PauliBasis::X: return 'X';
    case PauliBasis::Y: return 'Y';
    default: return 'Z';
  }
}

// Parameters that prepare |+>^n: the final layer's RY column at pi/2, all
// other angles zero (entangling gates act trivially on |0...0>).
inline Eigen::VectorXd plus_state_binding(const ParameterizedCircuit& circuit) {
  const auto& layers = circuit.rotation_layers();
  if (layers.empty() || layers.back().first_kind != GateKind::RY) {
    throw std::invalid_argument(
        "plus-state binding needs a final RY rotation layer");
  }
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(circuit.n_params());
  for (int s : layers.back().first_slots) theta[s] = std::numbers::pi / 2;
  return theta;
}

// Parameters that prepare the product of single-qubit basis eigenstates given
// by `outcome` (character k is the outcome bit of qubit k; '0' marks the +1
// eigenstate). Only the final rotation layer is bound:
//   X basis: |+> -> RY(+pi/2) RZ(0),   |-> -> RY(-pi/2) RZ(0)
//   Y basis: |+i> -> RX(pi/2) RZ(pi),  |-i> -> RX(pi/2) RZ(0)
//   Z basis: |0> -> RY(0),             |1> -> RY(pi)
inline Eigen::VectorXd product_state_binding(const ParameterizedCircuit& circuit,
                                             PauliBasis basis,
                                             const std::string& outcome) {
  const auto& layers = circuit.rotation_layers();
  if (layers.empty()) throw std::invalid_argument("circuit has no rotation layers");
  const RotationLayer& last = layers.back();
  const int n = circuit.n_qubits();
  if (int(outcome.size()) != n) {
    throw std::invalid_argument("outcome bitstring length must equal n_qubits");
  }

  const GateKind needed = basis == PauliBasis::Y ? GateKind::RX : GateKind::RY;
  if (last.first_kind != needed) {
    throw std::invalid_argument(
        basis == PauliBasis::Y
            ? "Y-basis product states need a final RX rotation column"
            : "this basis needs a final RY rotation column");
  }
  const bool needs_z_column = basis == PauliBasis::Y;
  if (needs_z_column && last.second_slots.empty()) {
    throw std::invalid_argument("Y-basis product states need a final RZ column");
  }

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(circuit.n_params());
  const double half_pi = std::numbers::pi / 2;
  for (int q = 0; q < n; ++q) {
    const bool one = outcome[q] == '1';
    if (!one && outcome[q] != '0') {
      throw std::invalid_argument("outcome bitstring must contain only 0/1");
    }
    switch (basis) {
      case PauliBasis::X:
        theta[last.first_slots[q]] = one ? -half_pi : half_pi;
        break;
      case PauliBasis::Y:
        theta[last.first_slots[q]] = half_pi;
        theta[last.second_slots[q]] = one ? 0.0 : std::numbers::pi;
        break;
      case PauliBasis::Z:
        theta[last.first_slots[q]] = one ? std::numbers::pi : 0.0;
        break;
    }
  }
  return theta;
}

}  // namespace qte
