// Run analysis: Bures metrics, a-posteriori error rates for real-time
// evolution, circuit-count formulas, sample-complexity bound evaluators and
// the hardware runtime model.

#pragma once

#include "qte/estimators.hpp"
#include "qte/trajectory.hpp"

namespace qte {

// D_B(psi, phi) = sqrt(2 (1 - |<psi|phi>|)), in [0, sqrt(2)].
double bures_distance(const StateVectorXcd& a, const StateVectorXcd& b);

// Time average of a Bures-distance series on a uniform grid, trapezoid rule.
double integrated_bures(const std::vector<double>& times,
                        const std::vector<double>& distances);

// D_B(phi(theta(t)), Psi(t)) on the trajectory grid against the exact
// evolution of `reference` from the trajectory's initial state.
std::vector<double> bures_series(const Trajectory& trajectory,
                                 const ParameterizedCircuit& circuit,
                                 const ExactEvolver& reference, EvolutionMode mode);

double integrated_bures(const Trajectory& trajectory, const ParameterizedCircuit& circuit,
                        const ExactEvolver& reference, EvolutionMode mode);

// Instantaneous model-error rate of real-time evolution at (theta, theta_dot):
// Var(H) + theta_dot^T g theta_dot - 2 theta_dot . b, clamped at -1e-9.
double varqrte_error_rate(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta,
                          const Eigen::VectorXd& theta_dot, const PauliSum& hamiltonian);

// Dual-loss form of the same rate: Var(H) + 2 L(delta)/dtau^2, which carries
// an O(dtau) bias relative to the exact rate.
double dual_error_rate(double variance, double loss, double dtau);

// Left-endpoint cumulative integral of nonnegative rates; entry k bounds the
// Bures distance at grid time k.
std::vector<double> integrate_error_bound(const std::vector<double>& rates, double dt);

enum class MethodTag { VarQitePsr, VarQiteLcu, DualQitePsr, DualQiteLcu, DualQrteLcu };

std::string method_tag_name(MethodTag tag);

// Circuits per timestep: VarQITE-LCU d(d+5)/2 + Pd, VarQITE-PSR 2d(d+P+1),
// Dual-LCU Pd + Kd, Dual-PSR twice that. K counts descent iterations and is
// required for the dual tags.
std::int64_t circuit_counts(MethodTag tag, int d, int p, int k = 0);

// Order-of-magnitude sample bounds with unit constants.
double sample_bound_varqte(int d, double e_max, double dt, double shift, double eps);
double sample_bound_dual(int d, int k, double dt, double dtau, double e_max, double eps);

struct DeviceTimings {
  double t_cx_ns = 451.0;
  double t_sqrt_x_ns = 36.0;
  double t_meas_ns = 860.0;
  double t_reset_ns = 2000.0;
};

// Duration of a single measurement of the hardware-efficient circuit with r
// repetitions: 2r t_CX + 2(r+1) t_sqrtX + t_meas + t_reset. Z rotations are
// virtual and free.
double shot_duration_ns(int repetitions, const DeviceTimings& timings = {});

// Total wall time N * t_shot, in seconds. n is accepted for interface
// symmetry; the per-shot model does not depend on it.
double runtime_seconds(int n_qubits, int repetitions, double total_measurements,
                       const DeviceTimings& timings = {});

struct ResourceLedger {
  MethodTag tag;
  std::int64_t shots_per_circuit = 0;
  std::vector<std::int64_t> circuits_per_step;
  std::vector<std::int64_t> cumulative_measurements;

  std::int64_t total_measurements() const {
    return cumulative_measurements.empty() ? 0 : cumulative_measurements.back();
  }
};

ResourceLedger build_ledger(const Trajectory& trajectory, MethodTag tag,
                            std::int64_t shots_per_circuit);

// Checks the recorded per-step circuits against the closed forms; throws on
// the first mismatch.
void validate_ledger(const Trajectory& trajectory, MethodTag tag, int d, int p);

// Per-step ||b||_2 plus the concatenated per-iteration fidelity-gradient
// norms recorded during a dual evolution.
struct GradientNormTrace {
  std::vector<double> evolution_gradient_norms;
  std::vector<std::vector<double>> fidelity_gradient_norms;
};

GradientNormTrace grad_norm_trace(const Trajectory& trajectory);

// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qte
