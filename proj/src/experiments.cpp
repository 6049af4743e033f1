#include "qte/experiments.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>

#include "qte/analysis.hpp"

namespace qte {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Replica k of a run draws from stream replica_stream_base + k; auxiliary
// per-experiment streams start at 300.
constexpr std::uint64_t replica_stream_base = 100;
constexpr std::uint64_t qmetts_stream_base = 300;
constexpr std::uint64_t diagnostic_stream_base = 400;
constexpr std::uint64_t scaling_stream_base = 500;

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header) {
    out_.open(path);
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t k = 0; k < header.size(); ++k) {
      out_ << (k ? "," : "") << header[k];
    }
    out_ << "\n";
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      out_ << (k ? "," : "") << cells[k];
    }
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

void write_json(const fs::path& path, const json& document) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << document.dump(2) << "\n";
}

// Runs `task(k)` for k in [0, count) on up to worker_thread_cap() threads.
// Each task must be self-contained; the first exception wins.
void parallel_for(int count, const std::function<void(int)>& task) {
  const int workers = std::max(1, std::min(worker_thread_cap(), count));
  if (workers == 1) {
    for (int k = 0; k < count; ++k) task(k);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr error;
  std::mutex error_mutex;
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (int k = next.fetch_add(1); k < count; k = next.fetch_add(1)) {
        try {
          task(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

MethodTag resolve_tag(const ExperimentConfig& config) {
  const bool psr = config.cost_model_enum() == CostModel::PSR;
  if (config.method == Method::VarQte) {
    return psr ? MethodTag::VarQitePsr : MethodTag::VarQiteLcu;
  }
  if (config.experiment == Experiment::EvolveReal) return MethodTag::DualQrteLcu;
  return psr ? MethodTag::DualQitePsr : MethodTag::DualQiteLcu;
}

struct ReplicaResult {
  Trajectory trajectory;
  std::vector<double> energies;
  std::vector<double> fidelities;
  std::vector<double> bures;
  double integrated_bures = 0.0;
  double final_energy = 0.0;
};

ReplicaResult run_one_replica(const ExperimentConfig& config,
                              const ParameterizedCircuit& circuit, const PauliSum& h,
                              const ExactEvolver& reference, int replica) {
  const EvolutionMode mode = config.experiment == Experiment::EvolveReal
                                 ? EvolutionMode::Real
                                 : EvolutionMode::Imaginary;
  ReplicaResult result;
  if (config.method == Method::DualQte) {
    DualConfig dual = config.dual_config();
    dual.shots.stream = replica_stream_base + std::uint64_t(replica);
    result.trajectory = dualqte_evolve(circuit, h, plus_state_binding(circuit), dual);
  } else {
    EvolutionConfig evo = config.varqte_config();
    evo.shots.stream = replica_stream_base + std::uint64_t(replica);
    result.trajectory = varqte_evolve(circuit, h, plus_state_binding(circuit), evo);
  }

  const StateVectorXcd psi0 = circuit.run(result.trajectory.thetas.front());
  for (std::size_t k = 0; k < result.trajectory.times.size(); ++k) {
    const StateVectorXcd psi = circuit.run(result.trajectory.thetas[k]);
    const StateVectorXcd target = reference.evolve(psi0, result.trajectory.times[k], mode);
    result.energies.push_back(expectation(h, psi));
    result.fidelities.push_back(state_fidelity(psi, target));
    result.bures.push_back(bures_distance(psi, target));
  }
  result.integrated_bures =
      integrated_bures(result.trajectory.times, result.bures);
  result.final_energy = result.energies.back();
  return result;
}

void write_trajectory_csv(const fs::path& path, const ReplicaResult& result) {
  const int d = int(result.trajectory.thetas.front().size());
  std::vector<std::string> header = {"time"};
  for (int i = 0; i < d; ++i) header.push_back("theta_" + std::to_string(i));
  header.insert(header.end(), {"energy", "fidelity_to_exact", "bures_to_exact"});
  CsvWriter csv(path, header);
  for (std::size_t k = 0; k < result.trajectory.times.size(); ++k) {
    std::vector<std::string> cells = {format_double(result.trajectory.times[k])};
    for (int i = 0; i < d; ++i) {
      cells.push_back(format_double(result.trajectory.thetas[k][i]));
    }
    cells.push_back(format_double(result.energies[k]));
    cells.push_back(format_double(result.fidelities[k]));
    cells.push_back(format_double(result.bures[k]));
    csv.row(cells);
  }
}

void write_resources_csv(const fs::path& path, const Trajectory& trajectory,
                         std::int64_t shots) {
  CsvWriter csv(path, {"step", "circuits", "shots", "cumulative_N"});
  std::int64_t cumulative = 0;
  for (std::size_t k = 0; k < trajectory.steps.size(); ++k) {
    cumulative += trajectory.steps[k].measurements;
    csv.row({std::to_string(k), std::to_string(trajectory.steps[k].circuits),
             std::to_string(shots), std::to_string(cumulative)});
  }
}

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return values.empty() ? 0.0 : sum / double(values.size());
}

double stddev_of(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double mean = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / double(values.size() - 1));
}

fs::path prepare_output_dir(const std::string& path) {
  fs::path dir(path);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError("cannot create output directory '" + path + "'");
  }
  return dir;
}

// ---------------------------------------------------------------------------
// evolve_imag / evolve_real

void run_evolution_experiment(const ExperimentConfig& config, const fs::path& dir) {
  if (config.system.n > max_dense_qubits) {
    throw ConfigError("evolution experiments need n <= 14 for the exact reference");
  }
  const PauliSum h = heisenberg(config.system);
  const ParameterizedCircuit circuit = build_ansatz(config.ansatz);
  const ExactEvolver reference(h);
  const MethodTag tag = resolve_tag(config);

  if (config.method == Method::Exact) {
    // Reference-only run: the exact trajectory has no parameters.
    const StateVectorXcd psi0 = circuit.run(plus_state_binding(circuit));
    const int steps = step_count(config.total_time, config.dt);
    CsvWriter csv(dir / "trajectory.csv",
                  {"time", "energy", "fidelity_to_exact", "bures_to_exact"});
    double final_energy = 0.0;
    const EvolutionMode mode = config.experiment == Experiment::EvolveReal
                                   ? EvolutionMode::Real
                                   : EvolutionMode::Imaginary;
    for (int k = 0; k <= steps; ++k) {
      const StateVectorXcd psi = reference.evolve(psi0, k * config.dt, mode);
      final_energy = expectation(h, psi);
      csv.row({format_double(k * config.dt), format_double(final_energy),
               format_double(1.0), format_double(0.0)});
    }
    CsvWriter resources(dir / "resources.csv", {"step", "circuits", "shots", "cumulative_N"});
    json summary;
    summary["integrated_bures"] = 0.0;
    summary["final_energy"] = final_energy;
    summary["total_measurements"] = 0;
    summary["runtime_estimate_seconds"] = 0.0;
    summary["seed"] = config.seed;
    summary["config"] = to_json(config);
    write_json(dir / "summary.json", summary);
    return;
  }

  std::vector<ReplicaResult> results(config.replicas);
  parallel_for(config.replicas, [&](int k) {
    results[k] = run_one_replica(config, circuit, h, reference, k);
  });

  const std::int64_t shots = config.shots.value_or(0);
  std::vector<double> ib_values, final_energies;
  json replica_summaries = json::array();
  for (int k = 0; k < config.replicas; ++k) {
    const fs::path replica_dir =
        config.replicas == 1 ? dir : dir / ("replica_" + std::to_string(k));
    if (config.replicas > 1) fs::create_directories(replica_dir);
    write_trajectory_csv(replica_dir / "trajectory.csv", results[k]);
    write_resources_csv(replica_dir / "resources.csv", results[k].trajectory, shots);

    ib_values.push_back(results[k].integrated_bures);
    final_energies.push_back(results[k].final_energy);
    json entry;
    entry["replica"] = k;
    entry["integrated_bures"] = results[k].integrated_bures;
    entry["final_energy"] = results[k].final_energy;
    entry["total_measurements"] = results[k].trajectory.total_measurements();
    replica_summaries.push_back(entry);
  }

  const auto& first = results.front().trajectory;
  json summary;
  summary["method_tag"] = method_tag_name(tag);
  summary["integrated_bures"] = mean_of(ib_values);
  summary["integrated_bures_std"] = stddev_of(ib_values);
  summary["final_energy"] = mean_of(final_energies);
  summary["total_measurements"] = first.total_measurements();
  summary["total_circuits"] = first.total_circuits();
  summary["runtime_estimate_seconds"] =
      runtime_seconds(config.system.n, config.ansatz.repetitions,
                      double(first.total_measurements()));
  summary["seed"] = config.seed;
  summary["replica_results"] = replica_summaries;
  summary["config"] = to_json(config);
  write_json(dir / "summary.json", summary);
}

// ---------------------------------------------------------------------------
// qmetts

PauliSum scaled_observable(const PauliSum& h) {
  PauliSum per_site = h;
  for (auto& term : per_site.terms) term.coefficient /= h.n_qubits;
  return per_site;
}

void run_qmetts_experiment(const ExperimentConfig& config, const fs::path& dir) {
  const PauliSum h = heisenberg(config.system);

  CsvWriter csv(dir / "metts.csv", {"beta", "mean", "stddev", "n_samples"});
  CsvWriter resources(dir / "resources.csv",
                      {"beta", "sample", "measurements", "cumulative_N"});
  json per_beta = json::array();
  std::int64_t cumulative = 0;

  for (std::size_t b = 0; b < config.betas.size(); ++b) {
    MettsConfig metts;
    metts.beta = config.betas[b];
    metts.n_samples = config.n_samples;
    metts.schedule = config.schedule_enum();
    metts.observable = scaled_observable(h);
    metts.observable_shots = config.observable_shots;
    metts.burn_in = config.burn_in;
    metts.seed = derive_seed(config.seed, qmetts_stream_base + b);
    metts.ansatz_repetitions = config.ansatz.repetitions;
    metts.entangler = config.ansatz.entangler;
    switch (config.method) {
      case Method::Exact: metts.evolver = MettsEvolver::Exact; break;
      case Method::VarQte: metts.evolver = MettsEvolver::VarQte; break;
      case Method::DualQte: metts.evolver = MettsEvolver::Dual; break;
    }
    metts.dual = config.dual_config();
    metts.varqte = config.varqte_config();

    const MettsResult result = qmetts_chain(h, metts);
    csv.row({format_double(metts.beta), format_double(result.mean),
             format_double(result.stddev), std::to_string(config.n_samples)});
    for (const auto& sample : result.samples) {
      cumulative += sample.measurements;
      resources.row({format_double(metts.beta), std::to_string(sample.index),
                     std::to_string(sample.measurements), std::to_string(cumulative)});
    }
    json entry;
    entry["beta"] = metts.beta;
    entry["mean"] = result.mean;
    entry["stddev"] = result.stddev;
    entry["total_measurements"] = result.total_measurements;
    per_beta.push_back(entry);
  }

  json summary;
  summary["observable"] = "energy_per_site";
  summary["results"] = per_beta;
  summary["total_measurements"] = cumulative;
  summary["runtime_estimate_seconds"] = runtime_seconds(
      config.system.n, config.ansatz.repetitions, double(cumulative));
  summary["seed"] = config.seed;
  summary["config"] = to_json(config);
  write_json(dir / "summary.json", summary);
}

// ---------------------------------------------------------------------------
// size_scaling

struct ScalingDefaults {
  int n;
  std::int64_t varqite_shots;
  std::int64_t dualqite_shots;
  int first_iterations;
  int warm_iterations;
  double learning_rate;
};

// Reference settings of the size-scaling benchmark, indexed by system size.
const ScalingDefaults scaling_table[] = {
    {4, 500, 500, 100, 15, 0.07},   {6, 1500, 600, 200, 25, 0.07},
    {8, 2500, 1000, 100, 20, 0.1},  {10, 6000, 1500, 200, 25, 0.12},
    {12, 8000, 2500, 200, 25, 0.1}, {14, 12000, 3000, 250, 25, 0.12},
};

const ScalingDefaults& scaling_defaults(int n) {
  for (const auto& entry : scaling_table) {
    if (entry.n == n) return entry;
  }
  throw ConfigError("size_scaling supports n in {4, 6, 8, 10, 12, 14}");
}

int log2_ceil(int n) {
  int r = 0;
  while ((1 << r) < n) ++r;
  return r;
}

struct ScalingPoint {
  int n = 0;
  int d = 0;
  std::int64_t shots = 0;
  int first_iterations = 0;
  int warm_iterations = 0;
  double learning_rate = 0.0;
  double mean_ib = 0.0;
  double std_ib = 0.0;
  std::int64_t measurements = 0;
};

ScalingPoint run_scaling_point(const ExperimentConfig& config, Method method, int n,
                               std::uint64_t stream_salt) {
  const ScalingDefaults& defaults = scaling_defaults(n);
  HeisenbergSpec system = config.system;
  system.n = n;
  const PauliSum h = heisenberg(system);

  AnsatzSpec ansatz;
  ansatz.n_qubits = n;
  ansatz.repetitions = log2_ceil(n);
  const ParameterizedCircuit circuit = build_ansatz(ansatz);
  const ExactEvolver reference(h);
  const Eigen::VectorXd theta0 = plus_state_binding(circuit);

  ScalingPoint point;
  point.n = n;
  point.d = circuit.n_params();
  point.shots =
      method == Method::VarQte ? defaults.varqite_shots : defaults.dualqite_shots;
  point.first_iterations = defaults.first_iterations;
  point.warm_iterations = defaults.warm_iterations;
  point.learning_rate = defaults.learning_rate;

  // Tune the shot budget upward until the target accuracy is met on average.
  for (int round = 0; round < 5; ++round) {
    std::vector<double> ib(config.seeds_per_point);
    std::vector<std::int64_t> measured(config.seeds_per_point);
    parallel_for(config.seeds_per_point, [&](int s) {
      Trajectory trajectory;
      if (method == Method::VarQte) {
        EvolutionConfig evo;
        evo.mode = EvolutionMode::Imaginary;
        evo.dt = config.dt;
        evo.total_time = config.total_time;
        evo.shots = ShotConfig::sampled(point.shots, config.seed,
                                        stream_salt + std::uint64_t(s));
        evo.regularization = config.regularization.policy();
        trajectory = varqte_evolve(circuit, h, theta0, evo);
      } else {
        DualConfig dual;
        dual.mode = EvolutionMode::Imaginary;
        dual.dt = config.dt;
        dual.total_time = config.total_time;
        dual.time_perturbation = config.time_perturbation;
        dual.learning_rate = point.learning_rate;
        dual.first_step_iterations = point.first_iterations;
        dual.warm_iterations = point.warm_iterations;
        dual.shots = ShotConfig::sampled(point.shots, config.seed,
                                         stream_salt + std::uint64_t(s));
        trajectory = dualqte_evolve(circuit, h, theta0, dual);
      }
      ib[s] = integrated_bures(trajectory, circuit, reference, EvolutionMode::Imaginary);
      measured[s] = trajectory.total_measurements();
    });
    point.mean_ib = mean_of(ib);
    point.std_ib = stddev_of(ib);
    point.measurements = measured.front();
    if (point.mean_ib <= config.target_integrated_bures) break;
    point.shots *= 2;
  }
  return point;
}

void run_size_scaling_experiment(const ExperimentConfig& config, const fs::path& dir) {
  CsvWriter csv(dir / "scaling.csv",
                {"n", "d", "method", "shots", "K0", "K_warm", "eta", "mean_IB",
                 "std_IB", "N"});
  json summary;
  json points = json::array();

  std::vector<double> var_d, var_n_meas, dual_d, dual_n_meas;
  std::uint64_t salt = scaling_stream_base;
  for (Method method : {Method::VarQte, Method::DualQte}) {
    for (int n : config.n_list) {
      const ScalingPoint point = run_scaling_point(config, method, n, salt);
      salt += 64;
      const bool dual = method == Method::DualQte;
      csv.row({std::to_string(point.n), std::to_string(point.d), method_name(method),
               std::to_string(point.shots),
               dual ? std::to_string(point.first_iterations) : "0",
               dual ? std::to_string(point.warm_iterations) : "0",
               dual ? format_double(point.learning_rate) : "0",
               format_double(point.mean_ib), format_double(point.std_ib),
               std::to_string(point.measurements)});
      json entry;
      entry["n"] = point.n;
      entry["d"] = point.d;
      entry["method"] = method_name(method);
      entry["shots"] = point.shots;
      entry["mean_IB"] = point.mean_ib;
      entry["std_IB"] = point.std_ib;
      entry["N"] = point.measurements;
      points.push_back(entry);
      if (dual) {
        dual_d.push_back(point.d);
        dual_n_meas.push_back(double(point.measurements));
      } else {
        var_d.push_back(point.d);
        var_n_meas.push_back(double(point.measurements));
      }
    }
  }

  summary["points"] = points;
  summary["varqite_exponent"] = log_log_slope(var_d, var_n_meas);
  summary["dualqite_exponent"] = log_log_slope(dual_d, dual_n_meas);
  summary["seed"] = config.seed;
  summary["config"] = to_json(config);
  write_json(dir / "summary.json", summary);
}

// ---------------------------------------------------------------------------
// illustrative_1q: RZ(theta) RY(theta) |0> with both rotations sharing one
// parameter, expanded to two equal slots.

struct TiedModel {
  ParameterizedCircuit circuit;
  double theta;

  Eigen::VectorXd slots(double delta) const {
    return Eigen::VectorXd::Constant(2, theta + delta);
  }
};

TiedModel make_illustrative_model(double theta) {
  AnsatzSpec spec;
  spec.n_qubits = 1;
  std::vector<Gate> gates = {{GateKind::RY, 0, -1, 0}, {GateKind::RZ, 0, -1, 1}};
  return {ParameterizedCircuit(spec, std::move(gates), 2, {}), theta};
}

// Gradient of the tied scalar update: contract the slot gradient with the
// all-ones expansion.
double tied_loss_gradient(const TiedModel& model, double delta,
                          const EvolutionGradient& b, double dtau, Sampler& sampler) {
  const Eigen::VectorXd gradient =
      dual_loss_gradient(model.circuit, Eigen::VectorXd::Constant(2, model.theta),
                         Eigen::VectorXd::Constant(2, delta), b, dtau, sampler);
  return gradient.sum();
}

double tied_loss(const TiedModel& model, double delta, const EvolutionGradient& b,
                 double dtau) {
  return dual_loss(model.circuit, Eigen::VectorXd::Constant(2, model.theta),
                   Eigen::VectorXd::Constant(2, delta), b, dtau);
}

double solve_tied_step(const TiedModel& model, const EvolutionGradient& b, double dtau,
                       double learning_rate, Sampler& sampler, int max_iterations,
                       std::optional<double> tolerance) {
  double delta = 0.0;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0; k < max_iterations; ++k) {
    delta -= learning_rate * tied_loss_gradient(model, delta, b, dtau, sampler);
    if (tolerance.has_value()) {
      const double loss = tied_loss(model, delta, b, dtau);
      if (k > 0 && std::abs(loss - previous) < *tolerance) break;
      previous = loss;
    }
  }
  return delta;
}

void run_illustrative_experiment(const ExperimentConfig& config, const fs::path& dir) {
  const double theta = std::numbers::pi / 4;
  const TiedModel model = make_illustrative_model(theta);
  PauliSum h;
  h.n_qubits = 1;
  h.terms.push_back({"Z", 1.0});

  Sampler exact = Sampler::exact();
  const EvolutionGradient b = evolution_gradient_imag(
      model.circuit, Eigen::VectorXd::Constant(2, theta), h, GradientMethod{}, exact);
  const double b_eff = b.sum();
  const QgtMatrix g = qgt_exact(model.circuit, Eigen::VectorXd::Constant(2, theta));
  const double g_eff = g.sum();
  const double theta_dot_reference = b_eff / g_eff;

  // Loss landscape at dtau = 1/2, QGT metric vs infidelity.
  const double curve_dtau = 0.5;
  {
    CsvWriter csv(dir / "loss_curve.csv", {"delta_theta", "loss_qgt", "loss_infidelity"});
    const int samples = 401;
    for (int k = 0; k < samples; ++k) {
      const double delta =
          -std::numbers::pi + 2.0 * std::numbers::pi * k / double(samples - 1);
      const double loss_qgt = 0.5 * g_eff * delta * delta - curve_dtau * delta * b_eff;
      const double loss_fid = tied_loss(model, delta, b, curve_dtau);
      csv.row({format_double(delta), format_double(loss_qgt), format_double(loss_fid)});
    }
  }

  // Update-step error against the QGT solution, exact and at 100 shots.
  const std::vector<double> dtaus = {1e-1, 1e-2, 1e-3};
  const int noisy_repetitions = 20;
  std::vector<double> exact_errors;
  CsvWriter csv(dir / "dtau_error.csv", {"dtau", "error_exact", "error_100_shots"});
  for (std::size_t k = 0; k < dtaus.size(); ++k) {
    const double dtau = dtaus[k];
    Sampler noiseless = Sampler::exact();
    const double delta_star =
        solve_tied_step(model, b, dtau, config.learning_rate, noiseless, 200000, 1e-16);
    const double exact_error = std::abs(delta_star / dtau - theta_dot_reference);
    exact_errors.push_back(exact_error);

    double noisy_error = 0.0;
    for (int rep = 0; rep < noisy_repetitions; ++rep) {
      Sampler sampler(ShotConfig::sampled(
          100, config.seed, diagnostic_stream_base + k * noisy_repetitions + rep));
      const double noisy_delta = solve_tied_step(model, b, dtau, config.learning_rate,
                                                 sampler, 100, std::nullopt);
      noisy_error += std::abs(noisy_delta / dtau - theta_dot_reference);
    }
    noisy_error /= noisy_repetitions;
    csv.row({format_double(dtau), format_double(exact_error), format_double(noisy_error)});
  }

  json summary;
  summary["theta"] = theta;
  summary["b_effective"] = b_eff;
  summary["qgt_effective"] = g_eff;
  summary["theta_dot_reference"] = theta_dot_reference;
  summary["error_slope_exact"] = log_log_slope(dtaus, exact_errors);
  summary["seed"] = config.seed;
  summary["config"] = to_json(config);
  write_json(dir / "summary.json", summary);
}

// ---------------------------------------------------------------------------
// product_state_diagnostic: sampling-error scaling on a single RY layer.

ParameterizedCircuit single_ry_layer(int n) {
  AnsatzSpec spec;
  spec.n_qubits = n;
  std::vector<Gate> gates;
  RotationLayer layer;
  layer.first_kind = GateKind::RY;
  for (int q = 0; q < n; ++q) {
    gates.push_back({GateKind::RY, q, -1, q});
    layer.first_slots.push_back(q);
  }
  return ParameterizedCircuit(spec, std::move(gates), n, {layer});
}

double spectral_norm(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

void run_diagnostic_experiment(const ExperimentConfig& config, const fs::path& dir) {
  const std::int64_t shots = config.shots.value_or(1000);
  const double shift = config.regularization.shift;
  const double dt = config.dt;
  const RegularizationPolicy policy = RegularizationPolicy::diagonal(shift);

  CsvWriter csv(dir / "diagnostic.csv",
                {"n", "d", "repetition", "delta_g_norm", "delta_b_norm",
                 "delta_theta_dot_norm", "theta_dot_norm", "eps_s"});

  std::vector<double> d_values, mean_dg, mean_db, mean_ddot, mean_dot;
  std::vector<double> all_eps, all_ddot;
  std::uint64_t stream = diagnostic_stream_base;
  for (int n : config.n_list) {
    PauliSum h;
    h.n_qubits = n;
    for (int q = 0; q < n; ++q) {
      std::string ops(n, 'I');
      ops[q] = 'Z';
      h.terms.push_back({std::move(ops), 1.0});
    }
    const ParameterizedCircuit circuit = single_ry_layer(n);
    const Eigen::VectorXd theta =
        Eigen::VectorXd::Constant(n, std::numbers::pi / 2);

    Sampler noiseless = Sampler::exact();
    const QgtMatrix g = qgt_exact(circuit, theta);
    const EvolutionGradient b =
        evolution_gradient_imag(circuit, theta, h, GradientMethod{}, noiseless);
    const Eigen::VectorXd theta_dot = solve_update(g, b, policy);
    const StateVectorXcd advanced_exact = circuit.run(theta + dt * theta_dot);

    double sum_dg = 0, sum_db = 0, sum_ddot = 0, sum_dot = 0;
    for (int rep = 0; rep < config.seeds_per_point; ++rep) {
      Sampler sampler(ShotConfig::sampled(shots, config.seed, stream++));
      const QgtMatrix g_noisy = qgt_psr(circuit, theta, sampler);
      const EvolutionGradient b_noisy =
          evolution_gradient_imag(circuit, theta, h, GradientMethod{}, sampler);
      const Eigen::VectorXd dot_noisy = solve_update(g_noisy, b_noisy, policy);

      const double dg = spectral_norm(g_noisy - g);
      const double db = (b_noisy - b).norm();
      const double ddot = (dot_noisy - theta_dot).norm();
      const double eps =
          bures_distance(circuit.run(theta + dt * dot_noisy), advanced_exact);
      csv.row({std::to_string(n), std::to_string(n), std::to_string(rep),
               format_double(dg), format_double(db), format_double(ddot),
               format_double(dot_noisy.norm()), format_double(eps)});
      sum_dg += dg;
      sum_db += db;
      sum_ddot += ddot;
      sum_dot += dot_noisy.norm();
      all_eps.push_back(eps);
      all_ddot.push_back(ddot);
    }
    d_values.push_back(n);
    mean_dg.push_back(sum_dg / config.seeds_per_point);
    mean_db.push_back(sum_db / config.seeds_per_point);
    mean_ddot.push_back(sum_ddot / config.seeds_per_point);
    mean_dot.push_back(sum_dot / config.seeds_per_point);
  }

  json summary;
  summary["exponent_delta_g"] = log_log_slope(d_values, mean_dg);
  summary["exponent_delta_b"] = log_log_slope(d_values, mean_db);
  summary["exponent_delta_theta_dot"] = log_log_slope(d_values, mean_ddot);
  summary["exponent_theta_dot"] = log_log_slope(d_values, mean_dot);
  summary["correlation_eps_delta_theta_dot"] = pearson_correlation(all_ddot, all_eps);
  summary["shots"] = shots;
  summary["diagonal_shift"] = shift;
  summary["seed"] = config.seed;
  summary["config"] = to_json(config);
  write_json(dir / "summary.json", summary);
}

// ---------------------------------------------------------------------------
// runtime_table: projected hardware runtimes from the measured cost fits.

struct MeasuredCost {
  int n;
  double measurements;
};

const MeasuredCost varqite_reference[] = {
    {4, 4.2e7}, {6, 4.2e8}, {8, 1.2e9}, {10, 6.7e9}, {12, 1.3e10}};
const MeasuredCost dualqite_reference[] = {
    {4, 8.8e7}, {6, 3.3e8}, {8, 6.0e8}, {10, 1.7e9}, {12, 3.5e9}, {14, 4.9e9}};

int parameters_for(int n) { return 2 * n * (log2_ceil(n) + 1); }

struct CostFit {
  double exponent = 0.0;
  double log_constant = 0.0;

  double evaluate(double d) const { return std::exp(log_constant + exponent * std::log(d)); }
};

template <std::size_t Count>
CostFit fit_costs(const MeasuredCost (&table)[Count]) {
  std::vector<double> d, n_meas;
  for (const auto& point : table) {
    d.push_back(parameters_for(point.n));
    n_meas.push_back(point.measurements);
  }
  CostFit fit;
  fit.exponent = log_log_slope(d, n_meas);
  double intercept = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    intercept += std::log(n_meas[k]) - fit.exponent * std::log(d[k]);
  }
  fit.log_constant = intercept / double(d.size());
  return fit;
}

void run_runtime_table_experiment(const ExperimentConfig& config, const fs::path& dir) {
  const CostFit varqite_fit = fit_costs(varqite_reference);
  const CostFit dualqite_fit = fit_costs(dualqite_reference);

  CsvWriter csv(dir / "runtime.csv",
                {"n", "r", "d", "method", "fitted_N", "t_shot_ns", "runtime_seconds",
                 "runtime_hours"});
  for (int n = 2; n <= 20; ++n) {
    const int r = log2_ceil(n);
    const int d = parameters_for(n);
    const double t_shot = shot_duration_ns(r);
    for (const auto& [name, fit] :
         {std::pair<std::string, const CostFit&>{"varqte", varqite_fit},
          std::pair<std::string, const CostFit&>{"dualqte", dualqite_fit}}) {
      const double n_meas = fit.evaluate(d);
      const double seconds = runtime_seconds(n, r, n_meas);
      csv.row({std::to_string(n), std::to_string(r), std::to_string(d), name,
               format_double(n_meas), format_double(t_shot), format_double(seconds),
               format_double(seconds / 3600.0)});
    }
  }

  json summary;
  summary["varqite_fitted_exponent"] = varqite_fit.exponent;
  summary["dualqite_fitted_exponent"] = dualqite_fit.exponent;
  summary["varqite_reference_exponent"] = 3.56;
  summary["dualqite_reference_exponent"] = 2.29;
  summary["seed"] = config.seed;
  summary["config"] = to_json(config);
  write_json(dir / "summary.json", summary);
}

}  // namespace

int worker_thread_cap() {
  if (const char* env = std::getenv("QTE_THREADS")) {
    const int value = std::atoi(env);
    if (value >= 1) return value;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

void run_experiment(ExperimentConfig config, const RunOverrides& overrides) {
  if (overrides.seed.has_value()) config.seed = *overrides.seed;
  if (overrides.replicas.has_value()) config.replicas = *overrides.replicas;
  if (overrides.output_dir.has_value()) config.output_path = *overrides.output_dir;
  if (overrides.force_exact) config.shots.reset();
  if (config.replicas < 1) throw ConfigError("replicas must be >= 1");

  const fs::path dir = prepare_output_dir(config.output_path);
  switch (config.experiment) {
    case Experiment::EvolveImag:
    case Experiment::EvolveReal:
      run_evolution_experiment(config, dir);
      break;
    case Experiment::Qmetts:
      run_qmetts_experiment(config, dir);
      break;
    case Experiment::SizeScaling:
      run_size_scaling_experiment(config, dir);
      break;
    case Experiment::Illustrative1q:
      run_illustrative_experiment(config, dir);
      break;
    case Experiment::ProductStateDiagnostic:
      run_diagnostic_experiment(config, dir);
      break;
    case Experiment::RuntimeTable:
      run_runtime_table_experiment(config, dir);
      break;
  }
}

std::string experiment_manifest() {
  struct Entry {
    Experiment experiment;
    const char* figure;
    const char* description;
  };
  const Entry entries[] = {
      {Experiment::EvolveImag, "Fig. 2",
       "imaginary-time Heisenberg evolution, dual optimizer vs linear solve"},
      {Experiment::EvolveReal, "Fig. 5",
       "real-time magnetization tracking on the 4-spin chain"},
      {Experiment::Qmetts, "Fig. 4",
       "energy per site from typical thermal state sampling"},
      {Experiment::SizeScaling, "Fig. 3",
       "measurement cost vs system size at fixed accuracy"},
      {Experiment::Illustrative1q, "Fig. 10/11",
       "single-qubit loss landscape and time-perturbation scaling"},
      {Experiment::ProductStateDiagnostic, "Fig. 12",
       "sampling-error scaling diagnostics on a product-state model"},
      {Experiment::RuntimeTable, "Fig. 1",
       "projected hardware runtimes from measurement-cost fits"},
  };

  std::string manifest;
  for (const auto& entry : entries) {
    ExperimentConfig config;
    config.experiment = entry.experiment;
    json document;
    document["experiment"] = experiment_name(entry.experiment);
    config = parse_config(document);
    manifest += experiment_name(entry.experiment);
    manifest += "  [" + std::string(entry.figure) + "]  " + entry.description + "\n";
    manifest += "    defaults: " + to_json(config).dump() + "\n";
  }
  return manifest;
}

}  // namespace qte
