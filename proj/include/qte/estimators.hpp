// Estimators for energies, fidelities, evolution gradients and the quantum
// geometric tensor, in exact mode or under the finite-shot measurement model.

#pragma once

#include <Eigen/Dense>

#include "qte/circuit.hpp"
#include "qte/pauli.hpp"
#include "qte/shots.hpp"

namespace qte {

using EvolutionGradient = Eigen::VectorXd;
using QgtMatrix = Eigen::MatrixXd;

enum class DerivativeMethod { ParameterShift, DerivativeState };
enum class CostModel { PSR, LCU };

struct GradientMethod {
  DerivativeMethod method = DerivativeMethod::ParameterShift;
  double shift = std::numbers::pi / 2;
  CostModel cost_model = CostModel::PSR;
};

// |<phi(a)|phi(b)>|^2, exactly.
double fidelity(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta_a,
                const Eigen::VectorXd& theta_b);

// Compute-uncompute fidelity estimate: one binomial draw on the exact value.
double fidelity(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta_a,
                const Eigen::VectorXd& theta_b, Sampler& sampler);

// <phi(theta)|H|phi(theta)>, each Pauli term estimated independently through
// p = (1 + <P>)/2 with the sampler's shot count.
double estimate_energy(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta,
                       const PauliSum& hamiltonian, Sampler& sampler);

// Imaginary-time evolution gradient -grad E(theta)/2. Parameter-shift mode
// evaluates term-sampled energies at theta +- pi/2 e_i; derivative-state mode
// uses exact derivative states, perturbed (when sampling) by the two-outcome
// model at scale max(1, |E|_bound).
EvolutionGradient evolution_gradient_imag(const ParameterizedCircuit& circuit,
                                          const Eigen::VectorXd& theta,
                                          const PauliSum& hamiltonian,
                                          const GradientMethod& method, Sampler& sampler);

// Real-time evolution gradient Im(<d_i phi|H|phi> - <d_i phi|phi> E).
// Imaginary parts are only accessible through an auxiliary-qubit circuit, so
// sampling follows the two-outcome model per component.
EvolutionGradient evolution_gradient_real(const ParameterizedCircuit& circuit,
                                          const Eigen::VectorXd& theta,
                                          const PauliSum& hamiltonian, Sampler& sampler);

// Gradient of F(theta, theta + delta) with respect to delta via the
// parameter-shift rule with shift s: (F(.+s e_i) - F(.-s e_i)) / (2 sin s).
Eigen::VectorXd fidelity_gradient(const ParameterizedCircuit& circuit,
                                  const Eigen::VectorXd& theta,
                                  const Eigen::VectorXd& delta, Sampler& sampler,
                                  double shift = std::numbers::pi / 2);

// Real part of the quantum geometric tensor from exact derivative states:
// g_ij = Re(<d_i phi|d_j phi> - <d_i phi|phi><phi|d_j phi>).
QgtMatrix qgt_exact(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta);

// QGT as the fidelity Hessian: g_ij = -(F++ - F+- - F-+ + F--)/8 with pi/2
// shifts on slots i and j. Sampled entries are symmetrized, not projected to
// positive semidefinite.
QgtMatrix qgt_psr(const ParameterizedCircuit& circuit, const Eigen::VectorXd& theta,
                  Sampler& sampler);

// QGT from derivative states with per-entry two-outcome noise at scale 1/4
// (the auxiliary-qubit estimation model; entries are bounded by 1/4).
QgtMatrix qgt_sampled_lcu(const ParameterizedCircuit& circuit,
                          const Eigen::VectorXd& theta, Sampler& sampler);

}  // namespace qte
