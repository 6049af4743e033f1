#include "qte/analysis.hpp"

#include <cmath>
#include <numeric>

namespace qte {

double bures_distance(const StateVectorXcd& a, const StateVectorXcd& b) {
  const double overlap = std::abs(inner_product(a, b));
  return std::sqrt(2.0 * std::max(0.0, 1.0 - std::min(overlap, 1.0)));
}

double integrated_bures(const std::vector<double>& times,
                        const std::vector<double>& distances) {
  if (times.size() != distances.size() || times.size() < 2) {
    throw std::invalid_argument("grid and distance series must match, length >= 2");
  }
  const double dt = times[1] - times[0];
  for (std::size_t k = 1; k + 1 < times.size(); ++k) {
    if (std::abs((times[k + 1] - times[k]) - dt) > 1e-9 * std::max(1.0, dt)) {
      throw std::invalid_argument("integrated Bures distance needs a uniform grid");
    }
  }
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < distances.size(); ++k) {
    sum += 0.5 * (distances[k] + distances[k + 1]) * dt;
  }
  const double total_time = times.back() - times.front();
  return sum / total_time;
}

std::vector<double> bures_series(const Trajectory& trajectory,
                                 const ParameterizedCircuit& circuit,
                                 const ExactEvolver& reference, EvolutionMode mode) {
  const StateVectorXcd psi0 = circuit.run(trajectory.thetas.front());
  std::vector<double> series;
  series.reserve(trajectory.times.size());
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    const StateVectorXcd target = reference.evolve(psi0, trajectory.times[k], mode);
    series.push_back(bures_distance(circuit.run(trajectory.thetas[k]), target));
  }
  return series;
}

double integrated_bures(const Trajectory& trajectory, const ParameterizedCircuit& circuit,
                        const ExactEvolver& reference, EvolutionMode mode) {
  return integrated_bures(trajectory.times,
                          bures_series(trajectory, circuit, reference, mode));
}

double varqrte_error_rate(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta,
                          const Eigen::VectorXd& theta_dot, const PauliSum& hamiltonian) {
  const StateVectorXcd psi = circuit.run(theta);
  const QgtMatrix g = qgt_exact(circuit, theta);
  Sampler exact = Sampler::exact();
  const EvolutionGradient b =
      evolution_gradient_real(circuit, theta, hamiltonian, exact);
  double rate = variance(hamiltonian, psi) + theta_dot.dot(g * theta_dot) -
                2.0 * theta_dot.dot(b);
  if (rate < -1e-9) throw std::runtime_error("error rate below tolerance");
  return std::max(0.0, rate);
}

double dual_error_rate(double variance, double loss, double dtau) {
  if (dtau <= 0) throw std::invalid_argument("dtau must be positive");
  const double rate = variance + 2.0 * loss / (dtau * dtau);
  return std::max(0.0, rate);
}

std::vector<double> integrate_error_bound(const std::vector<double>& rates, double dt) {
  if (dt <= 0) throw std::invalid_argument("dt must be positive");
  std::vector<double> bound;
  bound.reserve(rates.size() + 1);
  double total = 0.0;
  bound.push_back(0.0);
  for (double rate : rates) {
    if (rate < -1e-9) throw std::invalid_argument("negative error rate");
    total += std::max(0.0, rate) * dt;
    bound.push_back(total);
  }
  return bound;
}

std::string method_tag_name(MethodTag tag) {
  switch (tag) {
    case MethodTag::VarQitePsr: return "VarQITE-PSR";
    case MethodTag::VarQiteLcu: return "VarQITE-LCU";
    case MethodTag::DualQitePsr: return "DualQITE-PSR";
    case MethodTag::DualQiteLcu: return "DualQITE-LCU";
    case MethodTag::DualQrteLcu: return "DualQRTE-LCU";
  }
  throw std::logic_error("unknown method tag");
}

std::int64_t circuit_counts(MethodTag tag, int d, int p, int k) {
  if (d < 1 || p < 1) throw std::invalid_argument("d and p must be >= 1");
  const std::int64_t dd = d, pp = p, kk = k;
  switch (tag) {
    case MethodTag::VarQitePsr:
      return 2 * dd * (dd + pp + 1);
    case MethodTag::VarQiteLcu:
      return dd * (dd + 5) / 2 + pp * dd;
    case MethodTag::DualQitePsr:
    case MethodTag::DualQiteLcu:
    case MethodTag::DualQrteLcu: {
      if (k < 1) throw std::invalid_argument("dual methods require k >= 1");
      const std::int64_t lcu = pp * dd + kk * dd;
      return tag == MethodTag::DualQitePsr ? 2 * lcu : lcu;
    }
  }
  throw std::logic_error("unknown method tag");
}

double sample_bound_varqte(int d, double e_max, double dt, double shift, double eps) {
  if (d < 1 || e_max <= 0 || dt <= 0 || shift <= 0 || eps <= 0) {
    throw std::invalid_argument("sample bound arguments must be positive");
  }
  const double dd = d;
  return dd * dd * dd * e_max * e_max * dt * dt /
         (shift * shift * shift * shift * eps * eps);
}

double sample_bound_dual(int d, int k, double dt, double dtau, double e_max, double eps) {
  if (d < 1 || k < 1 || dt <= 0 || dtau <= 0 || e_max <= 0 || eps <= 0) {
    throw std::invalid_argument("sample bound arguments must be positive");
  }
  const double dd = d, kk = k;
  const double mix = 1.0 / dtau + e_max;
  return dd * dd * kk * kk * dt * dt * mix * mix / (dtau * dtau * eps * eps);
}

double shot_duration_ns(int repetitions, const DeviceTimings& timings) {
  if (repetitions < 0) throw std::invalid_argument("repetitions must be >= 0");
  return 2.0 * repetitions * timings.t_cx_ns +
         2.0 * (repetitions + 1) * timings.t_sqrt_x_ns + timings.t_meas_ns +
         timings.t_reset_ns;
}

double runtime_seconds(int n_qubits, int repetitions, double total_measurements,
                       const DeviceTimings& timings) {
  if (n_qubits < 1 || total_measurements < 0) {
    throw std::invalid_argument("invalid runtime estimate arguments");
  }
  return total_measurements * shot_duration_ns(repetitions, timings) * 1e-9;
}

ResourceLedger build_ledger(const Trajectory& trajectory, MethodTag tag,
                            std::int64_t shots_per_circuit) {
  ResourceLedger ledger;
  ledger.tag = tag;
  ledger.shots_per_circuit = shots_per_circuit;
  std::int64_t cumulative = 0;
  for (const auto& step : trajectory.steps) {
    ledger.circuits_per_step.push_back(step.circuits);
    cumulative += step.circuits * shots_per_circuit;
    ledger.cumulative_measurements.push_back(cumulative);
  }
  return ledger;
}

void validate_ledger(const Trajectory& trajectory, MethodTag tag, int d, int p) {
  for (std::size_t k = 0; k < trajectory.steps.size(); ++k) {
    const auto& step = trajectory.steps[k];
    const std::int64_t expected = circuit_counts(tag, d, p, step.iterations);
    if (step.circuits != expected) {
      throw std::runtime_error("ledger mismatch at step " + std::to_string(k) + ": " +
                               std::to_string(step.circuits) + " recorded, " +
                               std::to_string(expected) + " expected");
    }
  }
}

GradientNormTrace grad_norm_trace(const Trajectory& trajectory) {
  GradientNormTrace trace;
  for (const auto& step : trajectory.steps) {
    trace.evolution_gradient_norms.push_back(step.evolution_gradient_norm);
    trace.fidelity_gradient_norms.push_back(step.fidelity_gradient_norm_trace);
  }
  return trace;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs matching series, length >= 2");
  }
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(x[k] > 0) || !(y[k] > 0)) {
      throw std::invalid_argument("log-log fit needs positive data");
    }
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) throw std::invalid_argument("degenerate abscissa");
  return (n * sxy - sx * sy) / denom;
}

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("correlation needs matching series, length >= 2");
  }
  const double n = double(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx <= 0 || syy <= 0) throw std::invalid_argument("degenerate series");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace qte
