#include "doctest.h"

#include "oracles.hpp"
#include "qte/circuit.hpp"

using namespace qte;

namespace {

AnsatzSpec su2(int n, int r) {
  AnsatzSpec spec;
  spec.n_qubits = n;
  spec.repetitions = r;
  return spec;
}

AnsatzSpec alternating(int n, int r) {
  AnsatzSpec spec;
  spec.n_qubits = n;
  spec.repetitions = r;
  spec.family = AnsatzFamily::AlternatingXY;
  spec.entangler = Entangler::ChainRZZ;
  return spec;
}

}  // namespace

TEST_SUITE_BEGIN("core-sim");

TEST_CASE("hardware-efficient parameter counts") {
  CHECK(build_ansatz(su2(12, 3)).n_params() == 96);
  CHECK(build_ansatz(su2(2, 0)).n_params() == 4);
  // d = 2n(r+1) across the full supported grid.
  for (int n = 2; n <= 14; n += 2) {
    for (int r = 0; r <= 6; ++r) {
      CHECK(build_ansatz(su2(n, r)).n_params() == 2 * n * (r + 1));
    }
  }
}

TEST_CASE("every parameter slot is used by exactly one gate") {
  for (const AnsatzSpec& spec : {su2(5, 2), alternating(4, 3)}) {
    const auto circuit = build_ansatz(spec);
    std::vector<int> uses(circuit.n_params(), 0);
    for (const auto& gate : circuit.gates()) {
      if (gate.slot >= 0) ++uses[gate.slot];
      if (gate.kind == GateKind::CX) CHECK(gate.slot == -1);
    }
    for (int count : uses) CHECK(count == 1);
  }
}

TEST_CASE("alternating-XY layout matches the hand enumeration") {
  // n=4, r=3: RX layer, then three (chain RZZ, rotation) blocks with the
  // rotation column alternating Y, X, Y. 16 rotations + 9 entangler slots.
  const auto circuit = build_ansatz(alternating(4, 3));
  CHECK(circuit.n_params() == 25);

  std::vector<GateKind> kinds;
  for (const auto& gate : circuit.gates()) kinds.push_back(gate.kind);

  std::vector<GateKind> expected;
  auto rotations = [&](GateKind kind) {
    for (int q = 0; q < 4; ++q) expected.push_back(kind);
  };
  auto entangler = [&] {
    for (int e = 0; e < 3; ++e) expected.push_back(GateKind::RZZ);
  };
  rotations(GateKind::RX);
  entangler();
  rotations(GateKind::RY);
  entangler();
  rotations(GateKind::RX);
  entangler();
  rotations(GateKind::RY);
  CHECK(kinds == expected);

  // Chain entangler touches neighbors (0,1), (1,2), (2,3).
  const auto& gates = circuit.gates();
  CHECK(gates[4].q0 == 0);
  CHECK(gates[4].q1 == 1);
  CHECK(gates[6].q0 == 2);
  CHECK(gates[6].q1 == 3);
}

TEST_CASE("pairwise CX entangler has the two-sublayer pattern") {
  const auto circuit = build_ansatz(su2(5, 1));
  std::vector<std::pair<int, int>> cx;
  for (const auto& gate : circuit.gates()) {
    if (gate.kind == GateKind::CX) cx.emplace_back(gate.q0, gate.q1);
  }
  const std::vector<std::pair<int, int>> expected = {{0, 1}, {2, 3}, {1, 2}, {3, 4}};
  CHECK(cx == expected);
}

TEST_CASE("plus-state binding prepares the equal superposition") {
  for (const AnsatzSpec& spec : {su2(12, 3), su2(3, 1)}) {
    const auto circuit = build_ansatz(spec);
    const auto psi = circuit.run(plus_state_binding(circuit));
    const double amplitude = 1.0 / std::sqrt(double(psi.size()));
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
      CHECK(std::abs(psi[k] - Complex<double>(amplitude, 0)) < 1e-10);
    }
  }
  // The alternating ansatz ends in a Y layer for odd r.
  const auto circuit = build_ansatz(alternating(4, 3));
  const auto psi = circuit.run(plus_state_binding(circuit));
  for (Eigen::Index k = 0; k < psi.size(); ++k) {
    CHECK(std::abs(psi[k] - Complex<double>(0.25, 0)) < 1e-10);
  }
}

TEST_CASE("product-state bindings hit the advertised states") {
  const auto circuit = build_ansatz(su2(2, 1));

  // X basis, outcome 0: |+>.
  auto psi = circuit.run(product_state_binding(circuit, PauliBasis::X, "00"));
  StateVectorXcd plus2(4);
  plus2 << 0.5, 0.5, 0.5, 0.5;
  CHECK(std::abs(inner_product(psi, plus2)) == doctest::Approx(1.0).epsilon(1e-10));

  // X basis, outcome 1 on qubit 0: |-> (x) |+>.
  psi = circuit.run(product_state_binding(circuit, PauliBasis::X, "10"));
  StateVectorXcd mixed(4);
  mixed << 0.5, -0.5, 0.5, -0.5;
  CHECK(std::abs(inner_product(psi, mixed)) == doctest::Approx(1.0).epsilon(1e-10));

  // Y basis needs RX-RZ columns.
  CHECK_THROWS_AS(product_state_binding(circuit, PauliBasis::Y, "00"),
                  std::invalid_argument);

  AnsatzSpec xz = su2(2, 1);
  xz.rotation_pair = RotationPair::XZ;
  const auto y_circuit = build_ansatz(xz);

  // |+i> on both qubits, up to a global phase.
  psi = y_circuit.run(product_state_binding(y_circuit, PauliBasis::Y, "00"));
  StateVectorXcd plus_i(4);
  plus_i << 0.5, Complex<double>(0, 0.5), Complex<double>(0, 0.5), -0.5;
  CHECK(std::abs(inner_product(psi, plus_i)) == doctest::Approx(1.0).epsilon(1e-10));

  // RX(pi/2) RZ(0) |0> = |-i> exactly on qubit 0.
  psi = y_circuit.run(product_state_binding(y_circuit, PauliBasis::Y, "11"));
  StateVectorXcd minus_i(4);
  minus_i << 0.5, Complex<double>(0, -0.5), Complex<double>(0, -0.5), -0.5;
  CHECK(std::abs(inner_product(psi, minus_i)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("run_circuit equals the dense unitary product") {
  auto engine = oracle::rng(21);
  for (const AnsatzSpec& spec : {su2(2, 1), su2(3, 2), alternating(3, 2)}) {
    const auto circuit = build_ansatz(spec);
    for (int trial = 0; trial < 5; ++trial) {
      const auto theta = oracle::random_angles(circuit.n_params(), engine);
      const auto psi = circuit.run(theta);
      CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
      CHECK((psi - oracle::circuit_state(circuit, theta)).norm() < 1e-10);
    }
  }
}

TEST_CASE("derivative states match finite differences") {
  auto engine = oracle::rng(22);
  const auto circuit = build_ansatz(su2(3, 1));
  const auto theta = oracle::random_angles(circuit.n_params(), engine);
  const double h = 1e-6;
  for (int slot = 0; slot < circuit.n_params(); slot += 3) {
    Eigen::VectorXd shifted = theta;
    shifted[slot] = theta[slot] + h;
    const StateVectorXcd plus = circuit.run(shifted);
    shifted[slot] = theta[slot] - h;
    const StateVectorXcd minus = circuit.run(shifted);
    const StateVectorXcd fd = (plus - minus) / (2 * h);
    CHECK((circuit.derivative_state(theta, slot) - fd).norm() < 1e-7);
  }
}

TEST_CASE("parameter and argument validation") {
  const auto circuit = build_ansatz(su2(2, 1));
  CHECK_THROWS_AS(circuit.run(Eigen::VectorXd::Zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(circuit.derivative_state(Eigen::VectorXd::Zero(8), 99),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_ansatz(su2(1, 1)), std::invalid_argument);

  AnsatzSpec bad = alternating(3, 1);
  bad.entangler = Entangler::PairwiseCX;
  CHECK_THROWS_AS(build_ansatz(bad), std::invalid_argument);
}

TEST_SUITE_END();
