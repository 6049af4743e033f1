#include "doctest.h"

#include "oracles.hpp"
#include "qte/pauli.hpp"

using namespace qte;

TEST_SUITE_BEGIN("hamiltonian");

TEST_CASE("heisenberg term counting and coefficients") {
  const PauliSum circle3 = heisenberg({3, LatticeTopology::Circle, 1.0, 1.0});
  CHECK(circle3.n_terms() == 12);  // 9 two-body + 3 field

  const PauliSum chain4 = heisenberg({4, LatticeTopology::Chain, 0.25, -1.0});
  int quarter = 0, minus_one = 0;
  for (const auto& term : chain4.terms) {
    if (term.coefficient == 0.25) ++quarter;
    if (term.coefficient == -1.0) ++minus_one;
  }
  CHECK(quarter == 9);
  CHECK(minus_one == 4);
  CHECK(chain4.n_terms() == 13);

  // The two-site circle collapses its doubled edge onto the chain's term set.
  const PauliSum chain2 = heisenberg({2, LatticeTopology::Chain, 0.5, -1.0});
  const PauliSum circle2 = heisenberg({2, LatticeTopology::Circle, 0.5, -1.0});
  REQUIRE(chain2.n_terms() == circle2.n_terms());
  for (int k = 0; k < chain2.n_terms(); ++k) {
    CHECK(chain2.terms[k].ops == circle2.terms[k].ops);
    CHECK(chain2.terms[k].coefficient == circle2.terms[k].coefficient);
  }

  CHECK_THROWS_AS(heisenberg({1, LatticeTopology::Chain, 1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("dense forms of simple operators") {
  PauliSum z;
  z.n_qubits = 1;
  z.terms.push_back({"Z", 1.0});
  const Eigen::MatrixXcd mz = to_dense(z);
  CHECK(std::abs(mz(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(mz(1, 1) + 1.0) < 1e-15);

  PauliSum xx;
  xx.n_qubits = 2;
  xx.terms.push_back({"XX", 1.0});
  const Eigen::MatrixXcd mxx = to_dense(xx);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(mxx(i, j) - (i + j == 3 ? 1.0 : 0.0)) < 1e-15);
    }
  }
}

TEST_CASE("dense Heisenberg matches the Kronecker oracle") {
  for (int n : {2, 3, 4}) {
    const PauliSum h = heisenberg({n, LatticeTopology::Chain, 0.25, -1.0});
    const Eigen::MatrixXcd dense = to_dense(h);
    CHECK((dense - oracle::dense_pauli_sum(h)).cwiseAbs().maxCoeff() < 1e-13);
    // Hermiticity.
    CHECK((dense - dense.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("heisenberg commutes with the total-Z operator") {
  const PauliSum h = heisenberg({4, LatticeTopology::Circle, 0.25, -1.0});
  PauliSum total_z;
  total_z.n_qubits = 4;
  for (int q = 0; q < 4; ++q) {
    std::string ops(4, 'I');
    ops[q] = 'Z';
    total_z.terms.push_back({std::move(ops), 1.0});
  }
  const Eigen::MatrixXcd hm = to_dense(h), zm = to_dense(total_z);
  CHECK((hm * zm - zm * hm).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("expectation values") {
  PauliSum z;
  z.n_qubits = 1;
  z.terms.push_back({"Z", 1.0});

  auto zero = zero_state(1);
  CHECK(expectation(z, zero) == doctest::Approx(1.0));
  auto plus = zero_state(1);
  apply_ry(plus, 0, std::numbers::pi / 2);
  CHECK(expectation(z, plus) == doctest::Approx(0.0).epsilon(1e-12));

  auto engine = oracle::rng(31);
  const PauliSum h = heisenberg({3, LatticeTopology::Circle, 0.25, -1.0});
  const Eigen::MatrixXcd dense = oracle::dense_pauli_sum(h);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVectorXcd psi = oracle::random_state(3, engine);
    const double direct = (psi.adjoint() * dense * psi)(0, 0).real();
    CHECK(expectation(h, psi) == doctest::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("variance is nonnegative and matches the dense oracle") {
  PauliSum z;
  z.n_qubits = 1;
  z.terms.push_back({"Z", 1.0});
  auto zero = zero_state(1);  // eigenstate
  CHECK(variance(z, zero) == doctest::Approx(0.0));
  auto plus = zero_state(1);
  apply_ry(plus, 0, std::numbers::pi / 2);
  CHECK(variance(z, plus) == doctest::Approx(1.0).epsilon(1e-12));

  auto engine = oracle::rng(32);
  const PauliSum h = heisenberg({3, LatticeTopology::Chain, 0.25, -1.0});
  const Eigen::MatrixXcd dense = oracle::dense_pauli_sum(h);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVectorXcd psi = oracle::random_state(3, engine);
    const double e = (psi.adjoint() * dense * psi)(0, 0).real();
    const double e2 = (psi.adjoint() * dense * dense * psi)(0, 0).real();
    CHECK(variance(h, psi) == doctest::Approx(e2 - e * e).epsilon(1e-9));
    CHECK(variance(h, psi) >= 0.0);
  }
}

TEST_CASE("energy extremes") {
  PauliSum z;
  z.n_qubits = 1;
  z.terms.push_back({"Z", 1.0});
  const auto ext = energy_extremes(z);
  CHECK(ext.min == doctest::Approx(-1.0));
  CHECK(ext.max == doctest::Approx(1.0));

  PauliSum mix;
  mix.n_qubits = 1;
  mix.terms.push_back({"Z", 2.0});
  mix.terms.push_back({"X", 1.0});
  const auto bound = energy_extremes(mix, ExtremesMode::CoefficientBound);
  CHECK(bound.min == doctest::Approx(-3.0));
  CHECK(bound.max == doctest::Approx(3.0));

  const PauliSum h = heisenberg({6, LatticeTopology::Chain, 0.25, -1.0});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(oracle::dense_pauli_sum(h));
  const auto exact = energy_extremes(h);
  CHECK(exact.min == doctest::Approx(solver.eigenvalues().minCoeff()).epsilon(1e-10));
  CHECK(exact.max == doctest::Approx(solver.eigenvalues().maxCoeff()).epsilon(1e-10));
}

TEST_CASE("exact evolution against the dense oracle") {
  const PauliSum h = heisenberg({4, LatticeTopology::Chain, 0.25, -1.0});
  auto engine = oracle::rng(33);
  const StateVectorXcd psi0 = oracle::random_state(4, engine);

  // t = 0 leaves the state unchanged in both modes.
  CHECK((exact_evolve(h, psi0, 0.0, EvolutionMode::Real) - psi0).norm() < 1e-12);
  CHECK((exact_evolve(h, psi0, 0.0, EvolutionMode::Imaginary) - psi0).norm() < 1e-12);

  const Eigen::MatrixXcd dense = oracle::dense_pauli_sum(h);
  const StateVectorXcd via_oracle =
      oracle::evolve_dense(dense, psi0, oracle::Cx(0, -2.0));
  const StateVectorXcd via_evolver = exact_evolve(h, psi0, 2.0, EvolutionMode::Real);
  CHECK((via_evolver - via_oracle).norm() < 1e-8);

  // Long imaginary time projects |+> onto the -1 eigenstate of Z.
  PauliSum z;
  z.n_qubits = 1;
  z.terms.push_back({"Z", 1.0});
  auto plus = zero_state(1);
  apply_ry(plus, 0, std::numbers::pi / 2);
  const StateVectorXcd ground = exact_evolve(z, plus, 20.0, EvolutionMode::Imaginary);
  auto one = zero_state(1);
  apply_pauli_x(one, 0);
  CHECK(std::norm(inner_product(ground, one)) >= 1.0 - 1e-8);

  CHECK_THROWS_AS(exact_evolve(z, plus, -1.0, EvolutionMode::Imaginary),
                  std::invalid_argument);
}

TEST_CASE("real evolution conserves norm and energy") {
  const PauliSum h = heisenberg({3, LatticeTopology::Circle, 0.25, -1.0});
  auto engine = oracle::rng(34);
  const StateVectorXcd psi0 = oracle::random_state(3, engine);
  const ExactEvolver evolver(h);
  const double e0 = expectation(h, psi0);
  for (double t : {0.3, 0.9, 2.1, 4.7}) {
    const StateVectorXcd psi = evolver.evolve(psi0, t, EvolutionMode::Real);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-9);
    CHECK(std::abs(expectation(h, psi) - e0) < 1e-9);
  }
}

TEST_CASE("imaginary evolution decreases the energy monotonically") {
  const PauliSum h = heisenberg({3, LatticeTopology::Chain, 0.25, -1.0});
  auto engine = oracle::rng(35);
  const StateVectorXcd psi0 = oracle::random_state(3, engine);
  const ExactEvolver evolver(h);
  double previous = expectation(h, psi0);
  for (double t = 0.25; t <= 5.0; t += 0.25) {
    const double energy = expectation(h, evolver.evolve(psi0, t, EvolutionMode::Imaginary));
    CHECK(energy <= previous + 1e-9);
    previous = energy;
  }
}

TEST_SUITE_END();
