#pragma once

// Simulated annealing under noise with the exponential-weight
// Metropolis-Hastings kernel
//   P(x -> y) = (1/d_x) min(1, exp(gamma (fhat_x - fhat_y)))   for y a neighbor,
//   P(x -> x) = 1 - sum of the above,
// where each fhat is a fresh mean of s noisy samples. The inverse temperature
// is fixed for the whole run.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphopt/graph.hpp"
#include "graphopt/oracle.hpp"
#include "graphopt/record.hpp"
#include "graphopt/rng.hpp"
#include "graphopt/values.hpp"

namespace graphopt {

struct SAConfig {
  double gamma = 250.0;
  std::size_t samples_per_eval = 1;
  std::size_t steps = 0;
  Sense sense = Sense::Minimize;
};

struct Estimate {
  std::optional<double> mean;
  std::size_t samples = 0;
  bool complete = false;
};

/// Mean of s fresh metered samples of x; on budget exhaustion, the mean of
/// whatever was drawn.
inline Estimate estimate_value(NoisyOracle& oracle, NodeId x, std::size_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("estimate needs at least one sample");
  Estimate e;
  double sum = 0.0;
  for (; e.samples < samples; ++e.samples) {
    auto v = oracle.sample(x, rng);
    if (!v) break;
    sum += *v;
  }
  if (e.samples > 0) e.mean = sum / static_cast<double>(e.samples);
  e.complete = e.samples == samples;
  return e;
}

/// min(1, exp(gamma (f_from - f_to))) when minimizing, with the sign flipped
/// when maximizing.
inline double acceptance_probability(double from, double to, double gamma, Sense sense = Sense::Minimize) {
  const double gain = sense == Sense::Minimize ? from - to : to - from;
  if (gain >= 0.0) return 1.0;
  return std::exp(gamma * gain);
}

struct TransitionRow {
  /// Aligned with g.neighbors(x).
  std::vector<double> neighbor;
  double stay = 0.0;
};

inline TransitionRow sa_transition_probs(const Graph& g, std::span<const double> estimates, NodeId x, double gamma,
                                         Sense sense = Sense::Minimize) {
  if (estimates.size() != g.size()) throw std::invalid_argument("one estimate per node expected");
  auto nb = g.neighbors(x);
  if (nb.empty()) throw GraphError("node " + std::to_string(x) + " has no neighbors");
  const double inv_d = 1.0 / static_cast<double>(nb.size());
  TransitionRow row;
  row.neighbor.reserve(nb.size());
  double total = 0.0;
  for (NodeId y : nb) {
    row.neighbor.push_back(inv_d * acceptance_probability(estimates[x], estimates[y], gamma, sense));
    total += row.neighbor.back();
  }
  row.stay = std::max(0.0, 1.0 - total);
  return row;
}

struct StepOutcome {
  NodeId node;
  bool stopped;  // budget ran out; the chain stays put
};

/// Proposes a uniform neighbor, re-estimates both endpoints (2s samples) and
/// accepts with the kernel's probability.
inline StepOutcome sa_step(const Graph& g, NoisyOracle& oracle, NodeId x, const SAConfig& cfg, Rng& rng) {
  auto nb = g.neighbors(x);
  if (nb.empty()) return {x, false};
  const NodeId y = nb[uniform_index(rng, nb.size())];
  const Estimate ex = estimate_value(oracle, x, cfg.samples_per_eval, rng);
  if (!ex.complete) return {x, true};
  const Estimate ey = estimate_value(oracle, y, cfg.samples_per_eval, rng);
  if (!ey.complete) return {x, true};
  const double p = acceptance_probability(*ex.mean, *ey.mean, cfg.gamma, cfg.sense);
  if (p >= 1.0 || uniform01(rng) < p) return {y, false};
  return {x, false};
}

inline TrialRecord simulated_annealing(const Graph& g, NoisyOracle& oracle, NodeId x0, const SAConfig& cfg, Rng& rng,
                                       std::vector<NodeId>* trajectory = nullptr) {
  if (!g.contains(x0)) throw GraphError("start node " + std::to_string(x0) + " out of range");
  if (cfg.samples_per_eval == 0) throw std::invalid_argument("samples per evaluation must be >= 1");
  if (!(cfg.gamma >= 0.0)) throw std::invalid_argument("inverse temperature must be >= 0");
  Stopwatch clock;
  const std::size_t meter0 = oracle.samples_used();
  NodeId x = x0;
  if (trajectory) trajectory->assign(1, x0);
  for (std::size_t t = 0; t < cfg.steps; ++t) {
    auto out = sa_step(g, oracle, x, cfg, rng);
    if (out.stopped) break;
    x = out.node;
    if (trajectory) trajectory->push_back(x);
  }
  TrialRecord rec;
  rec.algo = "sa";
  rec.node = x;
  rec.gap = oracle.values().gap(x, cfg.sense);
  rec.samples = oracle.samples_used() - meter0;
  rec.time_ms = clock.elapsed_ms();
  return rec;
}

/// ceil(2 r gamma^2 R^2), at least one sample.
inline std::size_t theory_sample_size(double r, double gamma, double noise_scale) {
  if (r < 0.0 || gamma < 0.0 || noise_scale < 0.0) throw std::invalid_argument("inputs must be non-negative");
  const double s = std::ceil(2.0 * r * gamma * gamma * noise_scale * noise_scale);
  return std::max<std::size_t>(1, static_cast<std::size_t>(s));
}

struct ConvexAnnealingBound {
  double gamma;
  std::size_t min_rounds;
};

/// Strongly convex case with alpha = m / (m + 1): gamma = d / (e alpha eps)
/// and, after t >= log(alpha gap0 / (eps d)) / log(d / (d - alpha)) rounds, the
/// expected gap is at most eps. `initial_gap` is f(x0) - f(x*) >= 0; the
/// textbook form writes f(x*) - f(x0), whose sign would make the logarithm's
/// argument non-positive.
inline ConvexAnnealingBound sa_round_bound_convex(double alpha, double degree, double eps, double initial_gap) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(degree >= 1.0)) throw std::invalid_argument("degree must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  ConvexAnnealingBound b{degree / (std::numbers::e * alpha * eps), 0};
  const double num = std::log(alpha * std::abs(initial_gap) / (eps * degree));
  if (num > 0.0) b.min_rounds = static_cast<std::size_t>(std::ceil(num / std::log(degree / (degree - alpha))));
  return b;
}

struct NearlyConvexAnnealingBound {
  double gamma;
  double beta;
  std::size_t min_rounds;
  /// 3 d^{r+1} e^r / (alpha gamma). Reported unclamped; it may exceed the
  /// range of f and is meant for comparing parameter settings.
  double final_bound;
};

/// (alpha, c, r)-nearly convex case: gamma = 1/c,
/// beta = 1 - alpha exp(-c r gamma) / d^{r+1},
/// t >= r / log(1/beta) * log(F alpha gamma).
inline NearlyConvexAnnealingBound sa_round_bound_nearly(double alpha, double c, double r, double degree,
                                                        double range) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
  if (!(degree >= 1.0)) throw std::invalid_argument("degree must be >= 1");
  if (r < 0.0) throw std::invalid_argument("r must be >= 0");
  NearlyConvexAnnealingBound b{};
  b.gamma = 1.0 / c;
  const double grow = std::pow(degree, r + 1.0);
  b.beta = 1.0 - alpha * std::exp(-c * r * b.gamma) / grow;
  const double lg = std::log(range * alpha * b.gamma);
  if (lg > 0.0) b.min_rounds = static_cast<std::size_t>(std::ceil(r / std::log(1.0 / b.beta) * lg));
  b.final_bound = 3.0 / (alpha * b.gamma) * grow * std::exp(r);
  return b;
}

}  // namespace graphopt
