#include "doctest.h"

#include "oracles.hpp"
#include "qte/state.hpp"

using namespace qte;

TEST_SUITE_BEGIN("core-sim");

TEST_CASE("zero state is |0...0> with unit norm") {
  const auto psi = zero_state(3);
  CHECK(psi.size() == 8);
  CHECK(psi[0] == Complex<double>(1, 0));
  CHECK(psi.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(zero_state(0), std::invalid_argument);
  CHECK_THROWS_AS(zero_state(21), std::invalid_argument);
}

TEST_CASE("ry(pi/2) rotates |0> into the equal superposition") {
  auto psi = zero_state(1);
  apply_ry(psi, 0, std::numbers::pi / 2);
  CHECK(psi[0].real() == doctest::Approx(1 / std::numbers::sqrt2).epsilon(1e-12));
  CHECK(psi[1].real() == doctest::Approx(1 / std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("single-qubit gates match their dense matrices") {
  auto engine = oracle::rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3;
    const oracle::Vector reference_in = oracle::random_state(n, engine);
    StateVectorXcd psi = reference_in;
    const double angle = oracle::random_angles(1, engine)[0];
    const int q = trial % n;

    SUBCASE("") {}
    apply_rx(psi, q, angle);
    oracle::Vector expected =
        oracle::embed(oracle::rotation('X', angle), q, n) * reference_in;
    CHECK((psi - expected).norm() < 1e-12);
  }
}

TEST_CASE("two-qubit gates match their dense matrices") {
  auto engine = oracle::rng(12);
  const int n = 3;
  for (int trial = 0; trial < 10; ++trial) {
    const oracle::Vector input = oracle::random_state(n, engine);
    const double angle = oracle::random_angles(1, engine)[0];
    const int q0 = trial % n;
    const int q1 = (trial + 1) % n;

    StateVectorXcd psi = input;
    apply_rzz(psi, q0, q1, angle);
    const oracle::Matrix zz =
        oracle::embed(oracle::pauli_z(), q0, n) * oracle::embed(oracle::pauli_z(), q1, n);
    const oracle::Matrix rzz = std::cos(angle / 2) * oracle::identity(n) -
                               oracle::Cx(0, 1) * std::sin(angle / 2) * zz;
    CHECK((psi - rzz * input).norm() < 1e-12);

    StateVectorXcd chi = input;
    apply_cx(chi, q0, q1);
    const oracle::Matrix cx =
        oracle::gate_matrix({GateKind::CX, q0, q1, -1}, Eigen::VectorXd(), n);
    CHECK((chi - cx * input).norm() < 1e-12);
  }
}

TEST_CASE("gates preserve the norm") {
  auto engine = oracle::rng(13);
  StateVectorXcd psi = oracle::random_state(4, engine);
  for (int k = 0; k < 50; ++k) {
    const double angle = oracle::random_angles(1, engine)[0];
    switch (k % 5) {
      case 0: apply_rx(psi, k % 4, angle); break;
      case 1: apply_ry(psi, k % 4, angle); break;
      case 2: apply_rz(psi, k % 4, angle); break;
      case 3: apply_rzz(psi, k % 4, (k + 1) % 4, angle); break;
      case 4: apply_cx(psi, k % 4, (k + 1) % 4); break;
    }
    CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("inner product basics") {
  auto engine = oracle::rng(14);
  const StateVectorXcd psi = oracle::random_state(2, engine);
  CHECK(inner_product(psi, psi).real() == doctest::Approx(1.0).epsilon(1e-12));

  auto zero = zero_state(1);
  auto one = zero_state(1);
  apply_pauli_x(one, 0);
  CHECK(std::abs(inner_product(zero, one)) < 1e-15);

  // Four-element dot product by hand.
  const StateVectorXcd chi = oracle::random_state(2, engine);
  Complex<double> by_hand = 0;
  for (int k = 0; k < 4; ++k) by_hand += std::conj(psi[k]) * chi[k];
  CHECK(std::abs(inner_product(psi, chi) - by_hand) < 1e-14);

  const StateVectorXcd bigger = oracle::random_state(3, engine);
  CHECK_THROWS_AS(inner_product(psi, bigger), std::invalid_argument);
}

TEST_CASE("overlap modulus never exceeds one") {
  auto engine = oracle::rng(15);
  for (int trial = 0; trial < 25; ++trial) {
    const StateVectorXcd a = oracle::random_state(3, engine);
    const StateVectorXcd b = oracle::random_state(3, engine);
    CHECK(std::abs(inner_product(a, b)) <= 1.0 + 1e-10);
  }
}

TEST_CASE("measurement-basis rotations") {
  // H maps |+> to |0>.
  auto plus = zero_state(1);
  apply_ry(plus, 0, std::numbers::pi / 2);
  apply_hadamard(plus, 0);
  CHECK(std::abs(plus[0] - Complex<double>(1, 0)) < 1e-12);

  // S^dagger then H maps |+i> to |0>.
  StateVectorXcd plus_i(2);
  plus_i << Complex<double>(1 / std::numbers::sqrt2, 0),
      Complex<double>(0, 1 / std::numbers::sqrt2);
  apply_s_dagger(plus_i, 0);
  apply_hadamard(plus_i, 0);
  CHECK(std::abs(std::abs(plus_i[0]) - 1.0) < 1e-12);
}

TEST_SUITE_END();
