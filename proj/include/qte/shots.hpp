// Measurement model: binomial/Bernoulli statistics applied to exact outcome
// probabilities. A Sampler is a deterministic stream; identical
// (seed, stream, request sequence) reproduce identical estimates.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

namespace qte {

struct ShotConfig {
  std::optional<std::int64_t> shots;  // absent = exact evaluation
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  static ShotConfig exact() { return {}; }
  static ShotConfig sampled(std::int64_t shots, std::uint64_t seed,
                            std::uint64_t stream = 0) {
    if (shots <= 0) throw std::invalid_argument("shots must be positive");
    return {shots, seed, stream};
  }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Counter-based stream splitting: one master seed expands into independent
// named streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 1));
}

class Sampler {
 public:
  explicit Sampler(const ShotConfig& config)
      : shots_(config.shots), engine_(derive_seed(config.seed, config.stream)) {}

  static Sampler exact() { return Sampler(ShotConfig::exact()); }

  bool is_exact() const { return !shots_.has_value(); }
  std::int64_t shots_per_circuit() const { return shots_.value_or(0); }

  // Estimate of a probability p: exact mode returns p, sampled mode returns
  // k/shots with k ~ Binomial(shots, p). p may stray from [0,1] by at most
  // 1e-9 (clamped).
  double probability_estimate(double p) {
    if (p < -1e-9 || p > 1.0 + 1e-9) {
      throw std::invalid_argument("probability outside [0,1]");
    }
    p = std::min(1.0, std::max(0.0, p));
    if (is_exact()) return p;
    std::binomial_distribution<std::int64_t> dist(*shots_, p);
    return double(dist(engine_)) / double(*shots_);
  }

  // Two-outcome (Hadamard-test style) estimate of a value in [-scale, scale]:
  // measured as p = (1 + v/scale)/2 and mapped back.
  double signed_estimate(double value, double scale) {
    if (scale <= 0) throw std::invalid_argument("scale must be positive");
    const double p = (1.0 + value / scale) / 2.0;
    return (2.0 * probability_estimate(p) - 1.0) * scale;
  }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  // One draw from a categorical distribution given by `weights` (need not be
  // normalized). Consumes exactly one uniform variate.
  Eigen::Index sample_index(const Eigen::VectorXd& weights) {
    const double total = weights.sum();
    if (!(total > 0)) throw std::invalid_argument("weights must have positive sum");
    double u = uniform() * total;
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
      u -= weights[i];
      if (u <= 0) return i;
    }
    return weights.size() - 1;
  }

 private:
  std::optional<std::int64_t> shots_;
  std::mt19937_64 engine_;
};

}  // namespace qte
