#include "qte/dualqte.hpp"

#include "qte/analysis.hpp"

namespace qte {

double dual_loss(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta,
                 const Eigen::VectorXd& delta, const EvolutionGradient& b, double dtau) {
  if (delta.size() != b.size()) throw std::invalid_argument("delta/b length mismatch");
  const double f = fidelity(circuit, theta, theta + delta);
  return (1.0 - f) / 2.0 - dtau * delta.dot(b);
}

double dual_loss(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta,
                 const Eigen::VectorXd& delta, const EvolutionGradient& b, double dtau,
                 Sampler& sampler) {
  if (delta.size() != b.size()) throw std::invalid_argument("delta/b length mismatch");
  const double f = fidelity(circuit, theta, theta + delta, sampler);
  return (1.0 - f) / 2.0 - dtau * delta.dot(b);
}

Eigen::VectorXd dual_loss_gradient(const ParameterizedCircuit& circuit,
                                   const Eigen::VectorXd& theta,
                                   const Eigen::VectorXd& delta,
                                   const EvolutionGradient& b, double dtau,
                                   Sampler& sampler) {
  return -0.5 * fidelity_gradient(circuit, theta, delta, sampler) - dtau * b;
}

FeasibilityReport check_time_perturbation(const EvolutionGradient& b, double dtau) {
  FeasibilityReport report;
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    const double magnitude = std::abs(b[i]);
    if (magnitude == 0.0) continue;
    const double limit = 1.0 / (4.0 * magnitude);
    report.max_feasible = std::min(report.max_feasible, limit);
    if (dtau > limit) {
      report.ok = false;
      report.violations.push_back(int(i));
    }
  }
  return report;
}

StepSolution solve_step(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta,
                        const EvolutionGradient& b, const DualConfig& config,
                        Sampler& sampler, const std::optional<Eigen::VectorXd>& init) {
  config.check();
  const double dtau = config.time_perturbation;
  const bool tolerance_mode =
      config.exact_loss_tolerance.has_value() && sampler.is_exact();
  const int fixed_iterations =
      init.has_value() ? config.warm_iterations : config.first_step_iterations;
  const int iteration_cap = tolerance_mode ? config.max_iterations : fixed_iterations;

  StepSolution solution;
  solution.delta = init.value_or(Eigen::VectorXd::Zero(circuit.n_params()));

  double previous_loss = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0; k < iteration_cap; ++k) {
    // The loss trace is an exact-statevector diagnostic; gradient descent
    // itself only consumes (possibly sampled) gradients.
    const double loss = dual_loss(circuit, theta, solution.delta, b, dtau);
    const Eigen::VectorXd gradient =
        dual_loss_gradient(circuit, theta, solution.delta, b, dtau, sampler);
    if (!std::isfinite(loss) || !gradient.allFinite()) {
      throw NumericalError("non-finite dual loss or gradient");
    }

    solution.loss_trace.push_back(loss);
    solution.loss_gradient_norm_trace.push_back(gradient.norm());
    solution.fidelity_gradient_norm_trace.push_back((-2.0 * (gradient + dtau * b)).norm());
    solution.delta -= config.learning_rate * gradient;
    solution.iterations = k + 1;

    if (tolerance_mode && k > 0 &&
        std::abs(loss - previous_loss) < *config.exact_loss_tolerance) {
      break;
    }
    previous_loss = loss;
  }
  return solution;
}

Trajectory dualqte_evolve(const ParameterizedCircuit& circuit, const PauliSum& hamiltonian,
                          const Eigen::VectorXd& theta0, const DualConfig& config) {
  config.check();
  if (theta0.size() != circuit.n_params()) {
    throw std::invalid_argument("theta0 length mismatch");
  }

  const int d = circuit.n_params();
  const int p = hamiltonian.n_terms();
  const int steps = step_count(config.total_time, config.dt);
  const MethodTag tag = config.mode == EvolutionMode::Real
                            ? MethodTag::DualQrteLcu
                            : (config.cost_model == CostModel::PSR
                                   ? MethodTag::DualQitePsr
                                   : MethodTag::DualQiteLcu);
  Sampler sampler(config.shots);

  Trajectory trajectory;
  trajectory.dt = config.dt;
  trajectory.times.push_back(0.0);
  trajectory.thetas.push_back(theta0);

  Eigen::VectorXd theta = theta0;
  std::optional<Eigen::VectorXd> warm;
  for (int step = 0; step < steps; ++step) {
    // b depends on theta only, so it is evaluated once per timestep and
    // reused by every descent iteration.
    const EvolutionGradient b =
        config.mode == EvolutionMode::Imaginary
            ? evolution_gradient_imag(circuit, theta, hamiltonian,
                                      config.evolution_gradient, sampler)
            : evolution_gradient_real(circuit, theta, hamiltonian, sampler);

    const StepSolution solution = solve_step(circuit, theta, b, config, sampler, warm);
    if (!solution.delta.allFinite()) {
      throw NumericalError("non-finite update step at step " + std::to_string(step));
    }

    StepRecord record;
    record.iterations = solution.iterations;
    record.circuits = circuit_counts(tag, d, p, solution.iterations);
    record.measurements = record.circuits * sampler.shots_per_circuit();
    record.evolution_gradient_norm = b.norm();
    record.perturbation_feasible = check_time_perturbation(b, config.time_perturbation).ok;
    record.loss_trace = solution.loss_trace;
    record.loss_gradient_norm_trace = solution.loss_gradient_norm_trace;
    record.fidelity_gradient_norm_trace = solution.fidelity_gradient_norm_trace;
    trajectory.steps.push_back(std::move(record));

    theta += (config.dt / config.time_perturbation) * solution.delta;
    trajectory.times.push_back((step + 1) * config.dt);
    trajectory.thetas.push_back(theta);
    if (config.warm_start) warm = solution.delta;
  }
  return trajectory;
}

}  // namespace qte
