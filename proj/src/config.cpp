#include "qte/config.hpp"

#include <fstream>
#include <set>

namespace qte {

using nlohmann::json;

namespace {

void check_keys(const json& object, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!object.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& object, const char* key, T& target) {
  if (!object.contains(key)) return;
  try {
    target = object.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("invalid value for '") + key + "'");
  }
}

void read_shots(const json& object, const char* key,
                std::optional<std::int64_t>& target) {
  if (!object.contains(key)) return;
  const json& value = object.at(key);
  if (value.is_null()) {
    target = std::nullopt;
    return;
  }
  if (!value.is_number_integer() || value.get<std::int64_t>() <= 0) {
    throw ConfigError(std::string("'") + key + "' must be a positive integer or null");
  }
  target = value.get<std::int64_t>();
}

LatticeTopology parse_topology(const std::string& name) {
  if (name == "circle") return LatticeTopology::Circle;
  if (name == "chain") return LatticeTopology::Chain;
  throw ConfigError("topology must be 'circle' or 'chain'");
}

std::string topology_name(LatticeTopology t) {
  return t == LatticeTopology::Circle ? "circle" : "chain";
}

AnsatzFamily parse_family(const std::string& name) {
  if (name == "efficient_su2") return AnsatzFamily::EfficientSU2;
  if (name == "alternating_xy") return AnsatzFamily::AlternatingXY;
  throw ConfigError("ansatz family must be 'efficient_su2' or 'alternating_xy'");
}

std::string family_name(AnsatzFamily f) {
  return f == AnsatzFamily::EfficientSU2 ? "efficient_su2" : "alternating_xy";
}

RotationPair parse_rotation_pair(const std::string& name) {
  if (name == "YZ") return RotationPair::YZ;
  if (name == "XZ") return RotationPair::XZ;
  throw ConfigError("rotation_pair must be 'YZ' or 'XZ'");
}

Entangler parse_entangler(const std::string& name) {
  if (name == "pairwise_cx") return Entangler::PairwiseCX;
  if (name == "chain_rzz") return Entangler::ChainRZZ;
  throw ConfigError("entangler must be 'pairwise_cx' or 'chain_rzz'");
}

std::string entangler_name(Entangler e) {
  return e == Entangler::PairwiseCX ? "pairwise_cx" : "chain_rzz";
}

Method parse_method(const std::string& name) {
  if (name == "varqte") return Method::VarQte;
  if (name == "dualqte") return Method::DualQte;
  if (name == "exact") return Method::Exact;
  throw ConfigError("method must be 'varqte', 'dualqte' or 'exact'");
}

HeisenbergSpec parse_system(const json& object) {
  check_keys(object, {"n", "topology", "J", "g_field"}, "system");
  HeisenbergSpec spec;
  read(object, "n", spec.n);
  std::string topology = topology_name(spec.topology);
  read(object, "topology", topology);
  spec.topology = parse_topology(topology);
  read(object, "J", spec.coupling);
  read(object, "g_field", spec.field);
  return spec;
}

AnsatzSpec parse_ansatz(const json& object, AnsatzSpec spec) {
  check_keys(object,
             {"family", "rotation_pair", "entangler", "repetitions",
              "final_rotation_layer"},
             "ansatz");
  std::string family = family_name(spec.family);
  read(object, "family", family);
  spec.family = parse_family(family);
  std::string pair = spec.rotation_pair == RotationPair::YZ ? "YZ" : "XZ";
  read(object, "rotation_pair", pair);
  spec.rotation_pair = parse_rotation_pair(pair);
  std::string entangler = entangler_name(spec.entangler);
  read(object, "entangler", entangler);
  spec.entangler = parse_entangler(entangler);
  read(object, "repetitions", spec.repetitions);
  read(object, "final_rotation_layer", spec.final_rotation_layer);
  return spec;
}

RegularizationConfig parse_regularization(const json& object) {
  check_keys(object,
             {"kind", "shift", "cutoff", "grid_points", "lambda_min", "lambda_max"},
             "regularization");
  RegularizationConfig reg;
  read(object, "kind", reg.kind);
  if (reg.kind != "diagonal_shift" && reg.kind != "truncated_svd" &&
      reg.kind != "l_curve") {
    throw ConfigError("regularization kind must be diagonal_shift, truncated_svd or l_curve");
  }
  read(object, "shift", reg.shift);
  read(object, "cutoff", reg.cutoff);
  read(object, "grid_points", reg.grid_points);
  read(object, "lambda_min", reg.lambda_min);
  read(object, "lambda_max", reg.lambda_max);
  return reg;
}

// Per-experiment defaults; everything not listed keeps the struct defaults,
// which are the reference settings of the imaginary-time experiments.
void apply_experiment_defaults(ExperimentConfig& config) {
  switch (config.experiment) {
    case Experiment::EvolveImag:
      config.system = {12, LatticeTopology::Circle, 0.25, -1.0};
      config.ansatz.family = AnsatzFamily::EfficientSU2;
      config.ansatz.repetitions = 3;
      break;
    case Experiment::EvolveReal:
      config.system = {4, LatticeTopology::Chain, 0.25, -1.0};
      config.ansatz.family = AnsatzFamily::AlternatingXY;
      config.ansatz.entangler = Entangler::ChainRZZ;
      config.ansatz.repetitions = 3;
      config.dt = 0.02;  // T/100
      config.gradient_method = "derivative_state";
      break;
    case Experiment::Qmetts:
      config.system = {6, LatticeTopology::Chain, 0.25, -1.0};
      config.ansatz.repetitions = 2;
      config.n_samples = 25;
      break;
    case Experiment::SizeScaling:
      // n is taken from n_list; the couplings and topology are shared.
      config.system = {4, LatticeTopology::Circle, 0.25, -1.0};
      break;
    case Experiment::ProductStateDiagnostic:
      config.n_list = {2, 3, 4, 5, 6, 7, 8};
      config.seeds_per_point = 10;  // repetitions per size
      config.shots = 1000;
      config.regularization.kind = "diagonal_shift";
      break;
    case Experiment::Illustrative1q:
    case Experiment::RuntimeTable:
      break;
  }
}

}  // namespace

RegularizationPolicy RegularizationConfig::policy() const {
  if (kind == "diagonal_shift") return RegularizationPolicy::diagonal(shift);
  if (kind == "truncated_svd") return RegularizationPolicy::truncated_svd(cutoff);
  return RegularizationPolicy::l_curve(grid_points, lambda_min, lambda_max);
}

CostModel ExperimentConfig::cost_model_enum() const {
  if (cost_model == "PSR") return CostModel::PSR;
  if (cost_model == "LCU") return CostModel::LCU;
  throw ConfigError("cost_model must be 'PSR' or 'LCU'");
}

GradientMethod ExperimentConfig::gradient() const {
  GradientMethod method;
  if (gradient_method == "parameter_shift") {
    method.method = DerivativeMethod::ParameterShift;
  } else if (gradient_method == "derivative_state") {
    method.method = DerivativeMethod::DerivativeState;
  } else {
    throw ConfigError("gradient_method must be 'parameter_shift' or 'derivative_state'");
  }
  method.cost_model = cost_model_enum();
  return method;
}

DualConfig ExperimentConfig::dual_config() const {
  DualConfig dual;
  dual.mode = experiment == Experiment::EvolveReal ? EvolutionMode::Real
                                                   : EvolutionMode::Imaginary;
  dual.dt = dt;
  dual.total_time = total_time;
  dual.time_perturbation = time_perturbation;
  dual.learning_rate = learning_rate;
  dual.first_step_iterations = first_step_iterations;
  dual.warm_iterations = warm_iterations;
  dual.warm_start = warm_start;
  dual.shots.shots = shots;
  dual.shots.seed = seed;
  dual.evolution_gradient = gradient();
  dual.cost_model = cost_model_enum();
  return dual;
}

EvolutionConfig ExperimentConfig::varqte_config() const {
  EvolutionConfig evo;
  evo.mode = experiment == Experiment::EvolveReal ? EvolutionMode::Real
                                                  : EvolutionMode::Imaginary;
  evo.dt = dt;
  evo.total_time = total_time;
  evo.shots.shots = shots;
  evo.shots.seed = seed;
  evo.gradient = gradient();
  evo.regularization = regularization.policy();
  return evo;
}

BasisSchedule ExperimentConfig::schedule_enum() const {
  if (basis_schedule == "alternating_xy") return BasisSchedule::AlternatingXY;
  if (basis_schedule == "fixed_x") return BasisSchedule::FixedX;
  if (basis_schedule == "fixed_y") return BasisSchedule::FixedY;
  if (basis_schedule == "fixed_z") return BasisSchedule::FixedZ;
  throw ConfigError("basis_schedule must be alternating_xy or fixed_x/fixed_y/fixed_z");
}

Experiment parse_experiment(const std::string& name) {
  if (name == "evolve_imag") return Experiment::EvolveImag;
  if (name == "evolve_real") return Experiment::EvolveReal;
  if (name == "qmetts") return Experiment::Qmetts;
  if (name == "size_scaling") return Experiment::SizeScaling;
  if (name == "illustrative_1q") return Experiment::Illustrative1q;
  if (name == "product_state_diagnostic") return Experiment::ProductStateDiagnostic;
  if (name == "runtime_table") return Experiment::RuntimeTable;
  throw ConfigError("unknown experiment '" + name + "'");
}

std::string experiment_name(Experiment experiment) {
  switch (experiment) {
    case Experiment::EvolveImag: return "evolve_imag";
    case Experiment::EvolveReal: return "evolve_real";
    case Experiment::Qmetts: return "qmetts";
    case Experiment::SizeScaling: return "size_scaling";
    case Experiment::Illustrative1q: return "illustrative_1q";
    case Experiment::ProductStateDiagnostic: return "product_state_diagnostic";
    case Experiment::RuntimeTable: return "runtime_table";
  }
  throw std::logic_error("unknown experiment");
}

std::string method_name(Method method) {
  switch (method) {
    case Method::VarQte: return "varqte";
    case Method::DualQte: return "dualqte";
    case Method::Exact: return "exact";
  }
  throw std::logic_error("unknown method");
}

ExperimentConfig parse_config(const json& document) {
  static const std::set<std::string> top_level = {
      "experiment", "seed", "output_path", "replicas", "system", "ansatz", "method",
      "cost_model", "gradient_method", "shots", "dt", "total_time",
      "time_perturbation", "learning_rate", "first_step_iterations",
      "warm_iterations", "warm_start", "regularization", "betas", "n_samples",
      "basis_schedule", "observable_shots", "burn_in", "n_list", "seeds_per_point",
      "target_integrated_bures"};
  check_keys(document, top_level, "configuration");
  if (!document.contains("experiment")) {
    throw ConfigError("configuration requires an 'experiment' key");
  }

  ExperimentConfig config;
  config.experiment = parse_experiment(document.at("experiment").get<std::string>());
  apply_experiment_defaults(config);
  if (config.experiment == Experiment::EvolveImag) {
    config.replicas = document.contains("shots") && !document.at("shots").is_null() ? 5 : 1;
  }

  read(document, "seed", config.seed);
  read(document, "output_path", config.output_path);
  read(document, "replicas", config.replicas);
  if (document.contains("system")) config.system = parse_system(document.at("system"));
  config.ansatz.n_qubits = config.system.n;
  if (document.contains("ansatz")) {
    config.ansatz = parse_ansatz(document.at("ansatz"), config.ansatz);
  }
  if (document.contains("method")) {
    config.method = parse_method(document.at("method").get<std::string>());
  }
  read(document, "cost_model", config.cost_model);
  read(document, "gradient_method", config.gradient_method);
  read_shots(document, "shots", config.shots);
  read(document, "dt", config.dt);
  read(document, "total_time", config.total_time);
  read(document, "time_perturbation", config.time_perturbation);
  read(document, "learning_rate", config.learning_rate);
  read(document, "first_step_iterations", config.first_step_iterations);
  read(document, "warm_iterations", config.warm_iterations);
  read(document, "warm_start", config.warm_start);
  if (document.contains("regularization")) {
    config.regularization = parse_regularization(document.at("regularization"));
  }
  read(document, "betas", config.betas);
  read(document, "n_samples", config.n_samples);
  read(document, "basis_schedule", config.basis_schedule);
  read_shots(document, "observable_shots", config.observable_shots);
  read(document, "burn_in", config.burn_in);
  read(document, "n_list", config.n_list);
  read(document, "seeds_per_point", config.seeds_per_point);
  read(document, "target_integrated_bures", config.target_integrated_bures);

  if (config.replicas < 1) throw ConfigError("replicas must be >= 1");
  if (config.dt <= 0 || config.total_time < 0) {
    throw ConfigError("dt must be > 0 and total_time >= 0");
  }
  if (config.system.n < 2 && config.experiment != Experiment::Illustrative1q &&
      config.experiment != Experiment::ProductStateDiagnostic &&
      config.experiment != Experiment::RuntimeTable) {
    throw ConfigError("system needs n >= 2");
  }
  // Validate enum-like strings eagerly so errors surface at load time.
  config.cost_model_enum();
  config.gradient();
  config.schedule_enum();
  config.regularization.policy();
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file '" + path + "'");
  json document;
  try {
    in >> document;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("configuration parse error: ") + e.what());
  }
  return parse_config(document);
}

json to_json(const ExperimentConfig& config) {
  json document;
  document["experiment"] = experiment_name(config.experiment);
  document["seed"] = config.seed;
  document["output_path"] = config.output_path;
  document["replicas"] = config.replicas;
  document["system"] = {{"n", config.system.n},
                        {"topology", topology_name(config.system.topology)},
                        {"J", config.system.coupling},
                        {"g_field", config.system.field}};
  document["ansatz"] = {
      {"family", family_name(config.ansatz.family)},
      {"rotation_pair", config.ansatz.rotation_pair == RotationPair::YZ ? "YZ" : "XZ"},
      {"entangler", entangler_name(config.ansatz.entangler)},
      {"repetitions", config.ansatz.repetitions},
      {"final_rotation_layer", config.ansatz.final_rotation_layer}};
  document["method"] = method_name(config.method);
  document["cost_model"] = config.cost_model;
  document["gradient_method"] = config.gradient_method;
  document["shots"] = config.shots.has_value() ? json(*config.shots) : json(nullptr);
  document["dt"] = config.dt;
  document["total_time"] = config.total_time;
  document["time_perturbation"] = config.time_perturbation;
  document["learning_rate"] = config.learning_rate;
  document["first_step_iterations"] = config.first_step_iterations;
  document["warm_iterations"] = config.warm_iterations;
  document["warm_start"] = config.warm_start;
  document["regularization"] = {{"kind", config.regularization.kind},
                                {"shift", config.regularization.shift},
                                {"cutoff", config.regularization.cutoff},
                                {"grid_points", config.regularization.grid_points},
                                {"lambda_min", config.regularization.lambda_min},
                                {"lambda_max", config.regularization.lambda_max}};
  document["betas"] = config.betas;
  document["n_samples"] = config.n_samples;
  document["basis_schedule"] = config.basis_schedule;
  document["observable_shots"] =
      config.observable_shots.has_value() ? json(*config.observable_shots) : json(nullptr);
  document["burn_in"] = config.burn_in;
  document["n_list"] = config.n_list;
  document["seeds_per_point"] = config.seeds_per_point;
  document["target_integrated_bures"] = config.target_integrated_bures;
  return document;
}

}  // namespace qte
