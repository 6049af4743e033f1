// Experiment configuration: one JSON document per run, strictly validated
// (unknown keys rejected), with defaults matching the reference experiment
// settings. The resolved configuration is itself a valid configuration.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qte/circuit.hpp"
#include "qte/metts.hpp"
#include "qte/pauli.hpp"
#include "qte/varqte.hpp"

#include "json.hpp"

namespace qte {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Experiment {
  EvolveImag,
  EvolveReal,
  Qmetts,
  SizeScaling,
  Illustrative1q,
  ProductStateDiagnostic,
  RuntimeTable,
};

enum class Method { VarQte, DualQte, Exact };

struct RegularizationConfig {
  std::string kind = "l_curve";  // diagonal_shift | truncated_svd | l_curve
  double shift = 1e-2;
  double cutoff = 1e-8;
  int grid_points = 16;
  double lambda_min = 1e-6;
  double lambda_max = 1e-1;

  RegularizationPolicy policy() const;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::EvolveImag;
  std::uint64_t seed = 0;
  std::string output_path = "out";
  int replicas = 1;

  HeisenbergSpec system;
  AnsatzSpec ansatz;
  Method method = Method::DualQte;
  std::string cost_model = "LCU";                    // PSR | LCU
  std::string gradient_method = "parameter_shift";   // parameter_shift | derivative_state

  std::optional<std::int64_t> shots;  // absent = exact evaluation
  double dt = 0.01;
  double total_time = 2.0;

  // Dual-optimizer settings.
  double time_perturbation = 0.01;
  double learning_rate = 0.1;
  int first_step_iterations = 100;
  int warm_iterations = 10;
  bool warm_start = true;

  RegularizationConfig regularization;

  // Thermal-observable settings.
  std::vector<double> betas = {0.25, 0.5, 1.0, 2.0, 4.0};
  int n_samples = 25;
  std::string basis_schedule = "alternating_xy";
  std::optional<std::int64_t> observable_shots = 1024;
  int burn_in = 0;

  // Size-scaling settings.
  std::vector<int> n_list = {4, 6, 8};
  int seeds_per_point = 5;
  double target_integrated_bures = 0.1;

  CostModel cost_model_enum() const;
  GradientMethod gradient() const;
  DualConfig dual_config() const;
  EvolutionConfig varqte_config() const;
  BasisSchedule schedule_enum() const;
};

Experiment parse_experiment(const std::string& name);
std::string experiment_name(Experiment experiment);
std::string method_name(Method method);

// Strict parse: every key must be known and well-typed; defaults are filled
// per experiment.
ExperimentConfig parse_config(const nlohmann::json& document);
ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace qte
