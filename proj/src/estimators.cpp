#include "qte/estimators.hpp"

namespace qte {

namespace {

// Coefficient-sum bound on |E|, valid at any size; used as the scale of the
// two-outcome noise model.
double energy_scale(const PauliSum& hamiltonian) {
  const EnergyExtremes ext = energy_extremes(hamiltonian, ExtremesMode::CoefficientBound);
  return std::max(1.0, std::abs(ext.max));
}

double exact_fidelity(const StateVectorXcd& a, const StateVectorXcd& b) {
  return std::norm(inner_product(a, b));
}

}  // namespace

double fidelity(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta_a,
                const Eigen::VectorXd& theta_b) {
  return exact_fidelity(circuit.run(theta_a), circuit.run(theta_b));
}

double fidelity(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta_a,
                const Eigen::VectorXd& theta_b, Sampler& sampler) {
  return sampler.probability_estimate(fidelity(circuit, theta_a, theta_b));
}

double estimate_energy(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta,
                       const PauliSum& hamiltonian, Sampler& sampler) {
  const StateVectorXcd psi = circuit.run(theta);
  double energy = 0.0;
  for (const auto& term : hamiltonian.terms) {
    const double value = pauli_word_expectation(term, psi);
    const double estimate = 2.0 * sampler.probability_estimate((1.0 + value) / 2.0) - 1.0;
    energy += term.coefficient * estimate;
  }
  return energy;
}

EvolutionGradient evolution_gradient_imag(const ParameterizedCircuit& circuit,
                                          const Eigen::VectorXd& theta,
                                          const PauliSum& hamiltonian,
                                          const GradientMethod& method, Sampler& sampler) {
  const int d = circuit.n_params();
  EvolutionGradient gradient(d);

  if (method.method == DerivativeMethod::ParameterShift) {
    const double denom = 2.0 * std::sin(method.shift);
    Eigen::VectorXd shifted = theta;
    for (int i = 0; i < d; ++i) {
      shifted[i] = theta[i] + method.shift;
      const double e_plus = estimate_energy(circuit, shifted, hamiltonian, sampler);
      shifted[i] = theta[i] - method.shift;
      const double e_minus = estimate_energy(circuit, shifted, hamiltonian, sampler);
      shifted[i] = theta[i];
      gradient[i] = -0.5 * (e_plus - e_minus) / denom;
    }
    return gradient;
  }

  const StateVectorXcd psi = circuit.run(theta);
  const StateVectorXcd h_psi = apply_pauli_sum(hamiltonian, psi);
  const double scale = energy_scale(hamiltonian);
  for (int i = 0; i < d; ++i) {
    const StateVectorXcd dpsi = circuit.derivative_state(theta, i);
    const double value = -dpsi.dot(h_psi).real();
    gradient[i] = sampler.is_exact() ? value : sampler.signed_estimate(value, scale);
  }
  return gradient;
}

EvolutionGradient evolution_gradient_real(const ParameterizedCircuit& circuit,
                                          const Eigen::VectorXd& theta,
                                          const PauliSum& hamiltonian, Sampler& sampler) {
  const int d = circuit.n_params();
  const StateVectorXcd psi = circuit.run(theta);
  const StateVectorXcd h_psi = apply_pauli_sum(hamiltonian, psi);
  const double energy = psi.dot(h_psi).real();
  const double scale = energy_scale(hamiltonian);

  EvolutionGradient gradient(d);
  for (int i = 0; i < d; ++i) {
    const StateVectorXcd dpsi = circuit.derivative_state(theta, i);
    const double value = (dpsi.dot(h_psi) - dpsi.dot(psi) * energy).imag();
    gradient[i] = sampler.is_exact() ? value : sampler.signed_estimate(value, scale);
  }
  return gradient;
}

Eigen::VectorXd fidelity_gradient(const ParameterizedCircuit& circuit,
                                  const Eigen::VectorXd& theta,
                                  const Eigen::VectorXd& delta, Sampler& sampler,
                                  double shift) {
  const int d = circuit.n_params();
  if (delta.size() != d) throw std::invalid_argument("delta length mismatch");
  const StateVectorXcd psi = circuit.run(theta);
  const double denom = 2.0 * std::sin(shift);

  Eigen::VectorXd gradient(d);
  Eigen::VectorXd moved = theta + delta;
  for (int i = 0; i < d; ++i) {
    moved[i] += shift;
    const double f_plus =
        sampler.probability_estimate(exact_fidelity(psi, circuit.run(moved)));
    moved[i] -= 2.0 * shift;
    const double f_minus =
        sampler.probability_estimate(exact_fidelity(psi, circuit.run(moved)));
    moved[i] += shift;
    gradient[i] = (f_plus - f_minus) / denom;
  }
  return gradient;
}

QgtMatrix qgt_exact(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta) {
  const int d = circuit.n_params();
  const StateVectorXcd psi = circuit.run(theta);

  Eigen::MatrixXcd derivatives(psi.size(), d);
  for (int i = 0; i < d; ++i) derivatives.col(i) = circuit.derivative_state(theta, i);

  const Eigen::VectorXcd overlaps = derivatives.adjoint() * psi;  // <d_i phi|phi>
  const Eigen::MatrixXcd gram = derivatives.adjoint() * derivatives;
  return (gram - overlaps * overlaps.adjoint()).real();
}

QgtMatrix qgt_psr(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta,
                  Sampler& sampler) {
  const int d = circuit.n_params();
  const StateVectorXcd psi = circuit.run(theta);
  const double half_pi = std::numbers::pi / 2;

  auto shifted_fidelity = [&](int i, double si, int j, double sj) {
    Eigen::VectorXd moved = theta;
    moved[i] += si;
    moved[j] += sj;
    return sampler.probability_estimate(exact_fidelity(psi, circuit.run(moved)));
  };

  QgtMatrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const double fpp = shifted_fidelity(i, half_pi, j, half_pi);
      const double fpm = shifted_fidelity(i, half_pi, j, -half_pi);
      const double fmp = shifted_fidelity(i, -half_pi, j, half_pi);
      const double fmm = shifted_fidelity(i, -half_pi, j, -half_pi);
      const double entry = -(fpp - fpm - fmp + fmm) / 8.0;
      g(i, j) = entry;
      g(j, i) = entry;
    }
  }
  // Symmetrized by construction above; sampling noise enters each unordered
  // pair once, mirroring the shared circuit estimates.
  return g;
}

QgtMatrix qgt_sampled_lcu(const ParameterizedCircuit& circuit,
                          const Eigen::VectorXd& theta, Sampler& sampler) {
  QgtMatrix g = qgt_exact(circuit, theta);
  if (sampler.is_exact()) return g;
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = i; j < g.cols(); ++j) {
      const double noisy = sampler.signed_estimate(g(i, j), 0.25);
      g(i, j) = noisy;
      g(j, i) = noisy;
    }
  }
  return g;
}

}  // namespace qte
