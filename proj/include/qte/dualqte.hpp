// QGT-free time evolution: each timestep solves a small optimization problem
// whose loss replaces the metric with an infidelity, by warm-started gradient
// descent.

#pragma once

#include <optional>

#include "qte/estimators.hpp"
#include "qte/trajectory.hpp"

namespace qte {

struct DualConfig {
  EvolutionMode mode = EvolutionMode::Imaginary;
  double dt = 0.01;
  double total_time = 2.0;
  double time_perturbation = 0.01;  // delta tau
  double learning_rate = 0.1;
  int first_step_iterations = 100;
  int warm_iterations = 10;
  bool warm_start = true;
  ShotConfig shots;
  GradientMethod evolution_gradient;        // method for b
  CostModel cost_model = CostModel::LCU;    // resource accounting
  // Exact-mode stopping rule: terminate a step once the loss changes by less
  // than this amount, capped at max_iterations. Ignored under shot noise.
  std::optional<double> exact_loss_tolerance;
  int max_iterations = 10000;

  void check() const {
    if (time_perturbation <= 0) throw std::invalid_argument("time perturbation must be > 0");
    if (learning_rate <= 0) throw std::invalid_argument("learning rate must be > 0");
    if (warm_iterations < 1 || first_step_iterations < warm_iterations) {
      throw std::invalid_argument("iteration counts must satisfy K0 >= K_warm >= 1");
    }
  }
};

struct StepSolution {
  Eigen::VectorXd delta;                           // optimized update step
  int iterations = 0;
  std::vector<double> loss_trace;                  // exact loss per iteration
  std::vector<double> loss_gradient_norm_trace;
  std::vector<double> fidelity_gradient_norm_trace;
};

struct FeasibilityReport {
  bool ok = true;
  std::vector<int> violations;    // components with dtau > 1/(4|b_i|)
  double max_feasible = std::numeric_limits<double>::infinity();
};

// L(delta) = (1 - F(theta, theta+delta))/2 - dtau * delta . b, exactly.
double dual_loss(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta,
                 const Eigen::VectorXd& delta, const EvolutionGradient& b, double dtau);

// Same loss with the fidelity under the measurement model.
double dual_loss(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta,
                 const Eigen::VectorXd& delta, const EvolutionGradient& b, double dtau,
                 Sampler& sampler);

// grad L(delta) = -grad F(theta, theta+delta)/2 - dtau * b.
Eigen::VectorXd dual_loss_gradient(const ParameterizedCircuit& circuit,
                                   const Eigen::VectorXd& theta,
                                   const Eigen::VectorXd& delta,
                                   const EvolutionGradient& b, double dtau,
                                   Sampler& sampler);

// The loss has a stationary point only while dtau <= 1/(4|b_i|) for every
// component (fidelity gradients of single-use Pauli rotations live in
// [-1/2, 1/2]).
FeasibilityReport check_time_perturbation(const EvolutionGradient& b, double dtau);

// Fixed-learning-rate gradient descent for one timestep's update. Runs
// exactly K iterations (first_step_iterations when `init` is absent,
// warm_iterations otherwise) unless the exact-mode tolerance is active.
StepSolution solve_step(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta,
                        const EvolutionGradient& b, const DualConfig& config,
                        Sampler& sampler,
                        const std::optional<Eigen::VectorXd>& init = std::nullopt);

Trajectory dualqte_evolve(const ParameterizedCircuit& circuit, const PauliSum& hamiltonian,
                          const Eigen::VectorXd& theta0, const DualConfig& config);

}  // namespace qte
