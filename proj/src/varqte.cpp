#include "qte/varqte.hpp"

#include <Eigen/SVD>

#include "qte/analysis.hpp"

namespace qte {

namespace {

Eigen::VectorXd solve_shifted(const QgtMatrix& g, const EvolutionGradient& b,
                              double shift) {
  QgtMatrix shifted = g;
  shifted.diagonal().array() += shift;
  return shifted.ldlt().solve(b);
}

Eigen::VectorXd solve_diagonal_shift(const QgtMatrix& g, const EvolutionGradient& b,
                                     double shift) {
  const Eigen::VectorXd x = solve_shifted(g, b, shift);
  if (shift == 0.0) {
    const double residual = (g * x - b).norm();
    const double scale = std::max(1.0, b.norm());
    if (!x.allFinite() || residual > 1e-8 * scale) {
      throw NumericalError("singular linear system with zero regularization");
    }
  }
  return x;
}

Eigen::VectorXd solve_truncated_svd(const QgtMatrix& g, const EvolutionGradient& b,
                                    double cutoff) {
  Eigen::JacobiSVD<QgtMatrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sigma.size());
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma[k] >= cutoff && sigma[k] > 0) inv[k] = 1.0 / sigma[k];
  }
  return svd.matrixV() * inv.asDiagonal() * (svd.matrixU().transpose() * b);
}

// Maximum-curvature point of the (log residual, log solution-norm) curve over
// the lambda grid, via the signed Menger curvature of consecutive triplets.
// Ties break toward larger lambda.
Eigen::VectorXd solve_l_curve(const QgtMatrix& g, const EvolutionGradient& b,
                              const Eigen::VectorXd& grid) {
  if (grid.size() < 8) throw std::invalid_argument("l-curve grid needs >= 8 points");
  const Eigen::Index m = grid.size();
  std::vector<Eigen::VectorXd> solutions(m);
  Eigen::VectorXd log_res(m), log_norm(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    solutions[k] = solve_shifted(g, b, grid[k]);
    log_res[k] = std::log(std::max((g * solutions[k] - b).norm(), 1e-300));
    log_norm[k] = std::log(std::max(solutions[k].norm(), 1e-300));
  }

  Eigen::Index best = m / 2;
  double best_curvature = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 1; k + 1 < m; ++k) {
    const double ax = log_res[k] - log_res[k - 1], ay = log_norm[k] - log_norm[k - 1];
    const double bx = log_res[k + 1] - log_res[k], by = log_norm[k + 1] - log_norm[k];
    const double cross = ax * by - ay * bx;  // positive at the corner
    const double la = std::hypot(ax, ay), lb = std::hypot(bx, by);
    const double lc = std::hypot(log_res[k + 1] - log_res[k - 1],
                                 log_norm[k + 1] - log_norm[k - 1]);
    if (la <= 0 || lb <= 0 || lc <= 0) continue;
    const double curvature = 2.0 * cross / (la * lb * lc);
    if (curvature >= best_curvature) {
      best_curvature = curvature;
      best = k;
    }
  }
  return solutions[best];
}

}  // namespace

Eigen::VectorXd solve_update(const QgtMatrix& g, const EvolutionGradient& b,
                             const RegularizationPolicy& policy) {
  if (g.rows() != g.cols() || g.rows() != b.size()) {
    throw std::invalid_argument("dimension mismatch in linear system");
  }
  switch (policy.kind) {
    case RegularizationPolicy::Kind::DiagonalShift:
      return solve_diagonal_shift(g, b, policy.diagonal_shift);
    case RegularizationPolicy::Kind::TruncatedSvd:
      return solve_truncated_svd(g, b, policy.svd_cutoff);
    case RegularizationPolicy::Kind::LCurve: {
      const Eigen::VectorXd grid = policy.lambda_grid.size() > 0
                                       ? policy.lambda_grid
                                       : RegularizationPolicy::l_curve().lambda_grid;
      return solve_l_curve(g, b, grid);
    }
  }
  throw std::logic_error("unknown regularization kind");
}

Trajectory varqte_evolve(const ParameterizedCircuit& circuit, const PauliSum& hamiltonian,
                         const Eigen::VectorXd& theta0, const EvolutionConfig& config) {
  if (theta0.size() != circuit.n_params()) {
    throw std::invalid_argument("theta0 length mismatch");
  }
  if (config.mode == EvolutionMode::Real &&
      config.gradient.cost_model == CostModel::PSR) {
    throw std::invalid_argument(
        "real-time evolution gradients need the LCU cost model");
  }

  const int d = circuit.n_params();
  const int p = hamiltonian.n_terms();
  const int steps = step_count(config.total_time, config.dt);
  const MethodTag tag = config.gradient.cost_model == CostModel::PSR
                            ? MethodTag::VarQitePsr
                            : MethodTag::VarQiteLcu;
  Sampler sampler(config.shots);

  Trajectory trajectory;
  trajectory.dt = config.dt;
  trajectory.times.reserve(steps + 1);
  trajectory.thetas.reserve(steps + 1);
  trajectory.times.push_back(0.0);
  trajectory.thetas.push_back(theta0);

  Eigen::VectorXd theta = theta0;
  for (int step = 0; step < steps; ++step) {
    QgtMatrix g;
    if (config.gradient.method == DerivativeMethod::ParameterShift) {
      g = qgt_psr(circuit, theta, sampler);
    } else {
      g = qgt_sampled_lcu(circuit, theta, sampler);
    }
    const EvolutionGradient b =
        config.mode == EvolutionMode::Imaginary
            ? evolution_gradient_imag(circuit, theta, hamiltonian, config.gradient,
                                      sampler)
            : evolution_gradient_real(circuit, theta, hamiltonian, sampler);

    const Eigen::VectorXd theta_dot = solve_update(g, b, config.regularization);
    if (!theta_dot.allFinite()) {
      throw NumericalError("non-finite parameter derivative at step " +
                           std::to_string(step));
    }

    StepRecord record;
    record.iterations = 1;
    record.circuits = circuit_counts(tag, d, p);
    record.measurements = record.circuits * sampler.shots_per_circuit();
    record.evolution_gradient_norm = b.norm();
    trajectory.steps.push_back(std::move(record));

    theta += config.dt * theta_dot;
    trajectory.times.push_back((step + 1) * config.dt);
    trajectory.thetas.push_back(theta);
  }
  return trajectory;
}

}  // namespace qte
