#include "qte/metts.hpp"

#include <cmath>

namespace qte {

namespace {

// Named sub-streams of the chain seed.
constexpr std::uint64_t collapse_stream = 1;
constexpr std::uint64_t observable_stream = 2;
constexpr std::uint64_t evolution_stream_base = 16;

PauliBasis basis_for_sample(BasisSchedule schedule, int sample_index) {
  switch (schedule) {
    case BasisSchedule::AlternatingXY:
      return sample_index % 2 == 0 ? PauliBasis::X : PauliBasis::Y;
    case BasisSchedule::FixedX: return PauliBasis::X;
    case BasisSchedule::FixedY: return PauliBasis::Y;
    case BasisSchedule::FixedZ: return PauliBasis::Z;
  }
  throw std::logic_error("unknown basis schedule");
}

double estimate_observable(const PauliSum& observable, const StateVectorXcd& psi,
                           Sampler& sampler) {
  double value = 0.0;
  for (const auto& term : observable.terms) {
    const double exact = pauli_word_expectation(term, psi);
    value += term.coefficient *
             (2.0 * sampler.probability_estimate((1.0 + exact) / 2.0) - 1.0);
  }
  return value;
}

}  // namespace

std::string collapse_to_product(const StateVectorXcd& psi, PauliBasis basis,
                                Sampler& sampler) {
  const int n = num_qubits(psi);
  StateVectorXcd rotated = psi;
  for (int q = 0; q < n; ++q) {
    if (basis == PauliBasis::Y) apply_s_dagger(rotated, q);
    if (basis != PauliBasis::Z) apply_hadamard(rotated, q);
  }
  const Eigen::VectorXd probabilities = rotated.cwiseAbs2();
  const Eigen::Index drawn = sampler.sample_index(probabilities);

  std::string outcome(n, '0');
  for (int q = 0; q < n; ++q) {
    if (drawn & (Eigen::Index(1) << q)) outcome[q] = '1';
  }
  return outcome;
}

StateVectorXcd product_state(int n_qubits, PauliBasis basis, const std::string& outcome) {
  if (int(outcome.size()) != n_qubits) {
    throw std::invalid_argument("outcome length must equal n_qubits");
  }
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  StateVectorXcd psi = StateVectorXcd::Zero(state_dimension(n_qubits));
  psi[0] = 1.0;
  for (int q = 0; q < n_qubits; ++q) {
    const bool one = outcome[q] == '1';
    Complex<double> a0, a1;
    switch (basis) {
      case PauliBasis::X:
        a0 = inv_sqrt2;
        a1 = one ? -inv_sqrt2 : inv_sqrt2;
        break;
      case PauliBasis::Y:
        a0 = inv_sqrt2;
        a1 = Complex<double>(0, one ? -inv_sqrt2 : inv_sqrt2);
        break;
      case PauliBasis::Z:
        a0 = one ? 0.0 : 1.0;
        a1 = one ? 1.0 : 0.0;
        break;
    }
    // Tensor in qubit q: amplitudes with bit q set get a1, the rest a0.
    const Eigen::Index mask = Eigen::Index(1) << q;
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      psi[i] *= (i & mask) ? a1 : a0;
    }
  }
  return psi;
}

MettsResult qmetts_chain(const PauliSum& hamiltonian, const MettsConfig& config) {
  config.check();
  const int n = hamiltonian.n_qubits;
  const PauliSum& observable = config.observable;
  observable.check();
  if (observable.n_qubits != n) {
    throw std::invalid_argument("observable and Hamiltonian sizes differ");
  }

  Sampler collapse_sampler(
      ShotConfig{std::nullopt, config.seed, collapse_stream});
  ShotConfig observable_config;
  observable_config.shots = config.observable_shots;
  observable_config.seed = config.seed;
  observable_config.stream = observable_stream;
  Sampler observable_sampler(observable_config);

  std::optional<ExactEvolver> exact;
  if (config.evolver == MettsEvolver::Exact) exact.emplace(hamiltonian);

  MettsResult result;
  std::string outcome(n, '0');  // chain starts from all-zeros in the first basis
  for (int m = 0; m < config.n_samples; ++m) {
    const PauliBasis basis = basis_for_sample(config.schedule, m);

    MettsSample sample;
    sample.index = m;
    sample.basis = basis;
    sample.outcome = outcome;

    StateVectorXcd evolved;
    if (config.evolver == MettsEvolver::Exact) {
      evolved = exact->evolve(product_state(n, basis, outcome), config.beta / 2.0,
                              EvolutionMode::Imaginary);
    } else {
      AnsatzSpec spec;
      spec.n_qubits = n;
      spec.repetitions = config.ansatz_repetitions;
      spec.family = AnsatzFamily::EfficientSU2;
      spec.rotation_pair = basis == PauliBasis::Y ? RotationPair::XZ : RotationPair::YZ;
      spec.entangler = config.entangler;
      const ParameterizedCircuit circuit = build_ansatz(spec);
      const Eigen::VectorXd theta0 = product_state_binding(circuit, basis, outcome);

      Trajectory trajectory;
      if (config.evolver == MettsEvolver::Dual) {
        DualConfig dual = config.dual;
        dual.mode = EvolutionMode::Imaginary;
        dual.total_time = config.beta / 2.0;
        dual.shots.seed = config.seed;
        dual.shots.stream = evolution_stream_base + std::uint64_t(m);
        trajectory = dualqte_evolve(circuit, hamiltonian, theta0, dual);
      } else {
        EvolutionConfig varqte = config.varqte;
        varqte.mode = EvolutionMode::Imaginary;
        varqte.total_time = config.beta / 2.0;
        varqte.shots.seed = config.seed;
        varqte.shots.stream = evolution_stream_base + std::uint64_t(m);
        trajectory = varqte_evolve(circuit, hamiltonian, theta0, varqte);
      }
      sample.evolution_steps = trajectory.n_steps();
      sample.measurements = trajectory.total_measurements();
      evolved = circuit.run(trajectory.final_parameters());
    }

    sample.value = estimate_observable(observable, evolved, observable_sampler);
    if (config.observable_shots.has_value()) {
      sample.measurements += std::int64_t(observable.n_terms()) * *config.observable_shots;
    }
    if (!std::isfinite(sample.value)) throw NumericalError("non-finite METTS sample");

    result.total_measurements += sample.measurements;
    result.samples.push_back(sample);

    outcome = collapse_to_product(evolved, basis_for_sample(config.schedule, m + 1),
                                  collapse_sampler);
  }

  // Mean and sample standard deviation over the kept samples.
  const int kept = config.n_samples - config.burn_in;
  double mean = 0.0;
  for (int m = config.burn_in; m < config.n_samples; ++m) {
    mean += result.samples[m].value;
  }
  mean /= kept;
  double ss = 0.0;
  for (int m = config.burn_in; m < config.n_samples; ++m) {
    const double d = result.samples[m].value - mean;
    ss += d * d;
  }
  result.mean = mean;
  result.stddev = kept > 1 ? std::sqrt(ss / (kept - 1)) : 0.0;
  return result;
}

}  // namespace qte
