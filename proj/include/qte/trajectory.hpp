// Time-indexed parameter paths plus the per-step resource metadata shared by
// both evolvers.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qte {

// Raised when an evolution produces non-finite quantities; the CLI maps it
// to its own exit code.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepRecord {
  int iterations = 1;
  std::int64_t circuits = 0;
  std::int64_t measurements = 0;
  double evolution_gradient_norm = 0.0;            // ||b||_2 at the step
  bool perturbation_feasible = true;               // dual feasibility flag
  std::vector<double> loss_trace;                  // dual: per-iteration loss
  std::vector<double> loss_gradient_norm_trace;    // dual: ||grad L||_2
  std::vector<double> fidelity_gradient_norm_trace;  // dual: ||grad F||_2
};

struct Trajectory {
  double dt = 0.0;
  std::vector<double> times;                // steps + 1 entries, times[0] = 0
  std::vector<Eigen::VectorXd> thetas;      // same length as times
  std::vector<StepRecord> steps;            // one entry per integration step

  int n_steps() const { return int(steps.size()); }

  const Eigen::VectorXd& final_parameters() const {
    if (thetas.empty()) throw std::logic_error("empty trajectory");
    return thetas.back();
  }

  std::int64_t total_circuits() const {
    std::int64_t total = 0;
    for (const auto& s : steps) total += s.circuits;
    return total;
  }

  std::int64_t total_measurements() const {
    std::int64_t total = 0;
    for (const auto& s : steps) total += s.measurements;
    return total;
  }
};

inline int step_count(double total_time, double dt) {
  if (dt <= 0) throw std::invalid_argument("timestep must be positive");
  if (total_time < 0) throw std::invalid_argument("total time must be >= 0");
  return int(std::lround(total_time / dt));
}

}  // namespace qte
