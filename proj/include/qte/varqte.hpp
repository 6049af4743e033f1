// McLachlan variational time evolution: per-step QGT and evolution gradient,
// regularized linear solve, forward-Euler parameter integration.

#pragma once

#include "qte/estimators.hpp"
#include "qte/trajectory.hpp"

namespace qte {

struct RegularizationPolicy {
  enum class Kind { DiagonalShift, TruncatedSvd, LCurve };

  Kind kind = Kind::LCurve;
  double diagonal_shift = 1e-2;   // delta_c, DiagonalShift only
  double svd_cutoff = 1e-8;       // TruncatedSvd only
  Eigen::VectorXd lambda_grid;    // LCurve only, log-spaced

  static RegularizationPolicy diagonal(double shift) {
    if (shift < 0) throw std::invalid_argument("diagonal shift must be >= 0");
    RegularizationPolicy p;
    p.kind = Kind::DiagonalShift;
    p.diagonal_shift = shift;
    return p;
  }

  static RegularizationPolicy truncated_svd(double cutoff) {
    if (cutoff < 0) throw std::invalid_argument("svd cutoff must be >= 0");
    RegularizationPolicy p;
    p.kind = Kind::TruncatedSvd;
    p.svd_cutoff = cutoff;
    return p;
  }

  // A grid of at least 8 points spanning at least 4 decades.
  static RegularizationPolicy l_curve(int points = 16, double lambda_min = 1e-6,
                                      double lambda_max = 1e-1) {
    if (points < 8) throw std::invalid_argument("l-curve grid needs >= 8 points");
    if (!(lambda_min > 0) || !(lambda_max / lambda_min >= 1e4)) {
      throw std::invalid_argument("l-curve grid must span >= 4 decades");
    }
    RegularizationPolicy p;
    p.kind = Kind::LCurve;
    p.lambda_grid.resize(points);
    const double step = std::log(lambda_max / lambda_min) / (points - 1);
    for (int k = 0; k < points; ++k) p.lambda_grid[k] = lambda_min * std::exp(k * step);
    return p;
  }
};

// Solves g * theta_dot = b under the given regularization policy.
Eigen::VectorXd solve_update(const QgtMatrix& g, const EvolutionGradient& b,
                             const RegularizationPolicy& policy);

struct EvolutionConfig {
  EvolutionMode mode = EvolutionMode::Imaginary;
  double dt = 0.01;
  double total_time = 2.0;
  ShotConfig shots;
  GradientMethod gradient;
  RegularizationPolicy regularization;
};

Trajectory varqte_evolve(const ParameterizedCircuit& circuit, const PauliSum& hamiltonian,
                         const Eigen::VectorXd& theta0, const EvolutionConfig& config);

}  // namespace qte
