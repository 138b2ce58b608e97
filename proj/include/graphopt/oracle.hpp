#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "graphopt/graph.hpp"
#include "graphopt/rng.hpp"
#include "graphopt/values.hpp"

namespace graphopt {

/// Observation noise. Bernoulli draws 1 with probability f(x); Gaussian adds
/// N(0, R^2).
struct NoiseModel {
  enum class Kind { Bernoulli, Gaussian };
  Kind kind = Kind::Bernoulli;
  double scale = 0.0;

  static NoiseModel bernoulli() { return {Kind::Bernoulli, 0.0}; }
  static NoiseModel gaussian(double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("Gaussian noise scale must be >= 0");
    return {Kind::Gaussian, r};
  }

  /// Sub-Gaussian parameter R. Bernoulli noise is 1/2-sub-Gaussian.
  double sub_gaussian_scale() const noexcept { return kind == Kind::Bernoulli ? 0.5 : scale; }
};

/// Metered noisy access to a value table.
///
/// Each call to sample() costs one unit. With a budget set, sampling past it
/// returns nullopt and the meter stays at the budget; algorithms treat that as
/// the cue to stop and report their best-so-far answer.
class NoisyOracle {
 public:
  NoisyOracle(const ValueTable& values, NoiseModel noise, std::optional<std::size_t> budget = std::nullopt)
      : values_(&values), noise_(noise), budget_(budget) {
    if (noise.kind == NoiseModel::Kind::Bernoulli && !values.within_unit_interval())
      throw std::invalid_argument("Bernoulli noise needs every mean in [0, 1]");
  }

  std::optional<double> sample(NodeId x, Rng& rng) {
    if (!values_->size() || x >= values_->size())
      throw std::out_of_range("sample of node " + std::to_string(x) + " out of range");
    if (exhausted()) return std::nullopt;
    ++meter_;
    const double mean = (*values_)[x];
    if (noise_.kind == NoiseModel::Kind::Bernoulli) return uniform01(rng) < mean ? 1.0 : 0.0;
    if (noise_.scale == 0.0) return mean;
    return mean + std::normal_distribution<double>(0.0, noise_.scale)(rng);
  }

  /// Evaluation at the end of a length-T random walk from x. The walk is free;
  /// only the terminal observation is metered.
  std::optional<double> smoothed_sample(const Graph& g, NodeId x, std::size_t walk_length, Rng& rng) {
    if (exhausted()) return std::nullopt;
    return sample(random_walk(g, x, walk_length, rng).end, rng);
  }

  /// Ground truth, unmetered. For gap reporting and tests.
  double true_mean(NodeId x) const { return (*values_)[x]; }

  std::size_t samples_used() const noexcept { return meter_; }
  std::optional<std::size_t> budget() const noexcept { return budget_; }
  std::size_t remaining() const noexcept {
    return budget_ ? *budget_ - meter_ : std::numeric_limits<std::size_t>::max();
  }
  bool exhausted() const noexcept { return budget_ && meter_ >= *budget_; }

  const ValueTable& values() const noexcept { return *values_; }
  const NoiseModel& noise() const noexcept { return noise_; }

 private:
  const ValueTable* values_;
  NoiseModel noise_;
  std::optional<std::size_t> budget_;
  std::size_t meter_ = 0;
};

}  // namespace graphopt
