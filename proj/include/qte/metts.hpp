// Minimally entangled typical thermal states: a Markov chain of imaginary-
// time-evolved product states whose sample mean estimates Gibbs averages.

#pragma once

#include "qte/dualqte.hpp"
#include "qte/varqte.hpp"

namespace qte {

enum class BasisSchedule { AlternatingXY, FixedX, FixedY, FixedZ };
enum class MettsEvolver { Exact, Dual, VarQte };

struct MettsConfig {
  double beta = 1.0;
  int n_samples = 25;
  BasisSchedule schedule = BasisSchedule::AlternatingXY;
  PauliSum observable;
  MettsEvolver evolver = MettsEvolver::Dual;
  // Shots per Pauli term of each observable estimate; absent = exact.
  std::optional<std::int64_t> observable_shots = 1024;
  std::uint64_t seed = 0;
  int burn_in = 0;  // samples discarded from the statistics, kept in the list

  // Variational evolver settings. The ansatz rotation columns follow the
  // product-state basis of each sample (RY-RZ for X, RX-RZ for Y and Z).
  int ansatz_repetitions = 2;
  Entangler entangler = Entangler::PairwiseCX;
  DualConfig dual;
  EvolutionConfig varqte;

  void check() const {
    if (beta <= 0) throw std::invalid_argument("beta must be positive");
    if (n_samples < 1) throw std::invalid_argument("need at least one sample");
    if (burn_in < 0 || burn_in >= n_samples) {
      throw std::invalid_argument("burn-in must be in [0, n_samples)");
    }
  }
};

struct MettsSample {
  int index = 0;
  PauliBasis basis = PauliBasis::X;
  std::string outcome;   // product state the sample started from
  double value = 0.0;    // A_m
  int evolution_steps = 0;
  std::int64_t measurements = 0;
};

struct MettsResult {
  std::vector<MettsSample> samples;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation over the kept samples
  std::int64_t total_measurements = 0;
};

// Projectively measures every qubit in the given basis: rotates a copy of psi
// into the measurement basis (H for X, then S^dagger first for Y), draws one
// bitstring from the exact Born distribution. Character k of the result is
// the outcome of qubit k; '0' marks the +1 eigenstate.
std::string collapse_to_product(const StateVectorXcd& psi, PauliBasis basis,
                                Sampler& sampler);

// Product state of single-qubit basis eigenstates, built directly.
StateVectorXcd product_state(int n_qubits, PauliBasis basis, const std::string& outcome);

MettsResult qmetts_chain(const PauliSum& hamiltonian, const MettsConfig& config);

inline double energy_per_site(double energy, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return energy / n;
}

}  // namespace qte
