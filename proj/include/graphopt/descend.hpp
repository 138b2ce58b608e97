#pragma once

// Explore-Descend: hill climbing where every step is a fixed-budget best-arm
// problem over {x} and its neighbors, solved by successive rejects.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphopt/bandit.hpp"
#include "graphopt/graph.hpp"
#include "graphopt/oracle.hpp"
#include "graphopt/record.hpp"
#include "graphopt/rng.hpp"
#include "graphopt/values.hpp"

namespace graphopt {

struct DescendConfig {
  /// Per-round budgets T_1 .. T_S.
  std::vector<std::size_t> schedule;
  Sense sense = Sense::Minimize;
};

/// T split equally over at most `path_length` rounds, T_s = floor(T / S).
/// Rounds are merged from the tail while a round would get fewer than
/// `min_round` samples.
inline std::vector<std::size_t> equal_split_schedule(std::size_t total, std::size_t path_length,
                                                     std::size_t min_round) {
  if (path_length == 0 || total == 0) return {};
  std::size_t rounds = path_length;
  if (min_round > 0) rounds = std::min(rounds, std::max<std::size_t>(1, total / min_round));
  return std::vector<std::size_t>(rounds, total / rounds);
}

struct DescentStep {
  NodeId node;
  std::size_t pulls;
  bool budget_exhausted;
};

/// One best-arm round at x. Arm 0 is x itself, arm i the i-th neighbor. A
/// pull draws a noisy value of that node; rewards are negated when
/// minimizing. Ties therefore favor staying put.
inline DescentStep descent_oracle(const Graph& g, NodeId x, std::size_t round_budget, NoisyOracle& oracle,
                                  Sense sense, Rng& rng) {
  auto nb = g.neighbors(x);
  const std::size_t arms = nb.size() + 1;
  if (round_budget <= arms)
    throw std::invalid_argument("round budget " + std::to_string(round_budget) + " must exceed " +
                                std::to_string(arms) + " arms at node " + std::to_string(x));
  auto node_of = [&](std::size_t arm) { return arm == 0 ? x : nb[arm - 1]; };
  auto res = successive_reject(arms, round_budget, [&](std::size_t arm) -> std::optional<double> {
    auto s = oracle.sample(node_of(arm), rng);
    if (!s) return std::nullopt;
    return sense == Sense::Minimize ? -*s : *s;
  });
  return {node_of(res.best), res.pulls, res.budget_exhausted};
}

/// Runs the schedule from x0. Stops early when the oracle's budget runs out
/// or a round's budget cannot cover the current node's arms.
inline TrialRecord explore_descend(const Graph& g, NoisyOracle& oracle, NodeId x0, const DescendConfig& cfg, Rng& rng,
                                   std::vector<NodeId>* trajectory = nullptr) {
  if (!g.contains(x0)) throw GraphError("start node " + std::to_string(x0) + " out of range");
  Stopwatch clock;
  const std::size_t meter0 = oracle.samples_used();
  NodeId x = x0;
  if (trajectory) trajectory->assign(1, x0);
  for (std::size_t budget : cfg.schedule) {
    if (oracle.exhausted() || budget <= g.degree(x) + 1) break;
    auto step = descent_oracle(g, x, budget, oracle, cfg.sense, rng);
    x = step.node;
    if (trajectory) trajectory->push_back(x);
    if (step.budget_exhausted) break;
  }
  TrialRecord rec;
  rec.algo = "ed";
  rec.node = x;
  rec.gap = oracle.values().gap(x, cfg.sense);
  rec.samples = oracle.samples_used() - meter0;
  rec.time_ms = clock.elapsed_ms();
  return rec;
}

using RestartRule = std::function<std::size_t(std::size_t budget)>;

/// 1 + budget / 1000 restarts (integer division).
inline RestartRule restarts_per_thousand() {
  return [](std::size_t budget) { return 1 + budget / 1000; };
}

inline RestartRule fixed_restarts(std::size_t count) {
  if (count == 0) throw std::invalid_argument("restart count must be positive");
  return [count](std::size_t) { return count; };
}

struct RestartConfig {
  RestartRule rule = restarts_per_thousand();
  std::size_t path_length = 4;
  Sense sense = Sense::Minimize;
  /// Fraction of every restart's share spent re-estimating its terminal node.
  double reserve_fraction = 0.05;
};

struct RestartPlan {
  std::size_t restarts;
  std::size_t share;        // budget per restart, descent plus re-estimate
  std::size_t reestimate;   // samples for the terminal comparison
  std::size_t descent;      // share - reestimate
};

inline RestartPlan plan_restarts(std::size_t budget, const RestartConfig& cfg) {
  const std::size_t r = std::max<std::size_t>(1, cfg.rule(budget));
  RestartPlan p{r, budget / r, 0, budget / r};
  if (r > 1) {
    p.reestimate = static_cast<std::size_t>(std::floor(cfg.reserve_fraction * static_cast<double>(p.share)));
    p.descent = p.share - p.reestimate;
  }
  return p;
}

/// Explore-Descend from independent uniform-random starts with the budget
/// split equally between restarts. With more than one restart, each terminal
/// node is re-estimated with its reserved samples and the best estimate wins
/// (ties to the earlier restart). One restart is exactly explore_descend from
/// a random start.
inline TrialRecord explore_descend_restarts(const Graph& g, NoisyOracle& oracle, std::size_t budget,
                                            const RestartConfig& cfg, Rng& rng) {
  if (g.size() == 0) throw GraphError("empty graph");
  const RestartPlan plan = plan_restarts(budget, cfg);
  const std::size_t min_round = g.max_degree() + 2;
  DescendConfig dc{equal_split_schedule(plan.descent, cfg.path_length, min_round), cfg.sense};

  if (plan.restarts == 1) {
    const NodeId x0 = static_cast<NodeId>(uniform_index(rng, g.size()));
    return explore_descend(g, oracle, x0, dc, rng);
  }

  Stopwatch clock;
  const std::size_t meter0 = oracle.samples_used();
  std::optional<NodeId> best;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < plan.restarts; ++r) {
    const NodeId x0 = static_cast<NodeId>(uniform_index(rng, g.size()));
    const NodeId end = *explore_descend(g, oracle, x0, dc, rng).node;
    ArmStats est;
    for (std::size_t i = 0; i < plan.reestimate; ++i) {
      auto s = oracle.sample(end, rng);
      if (!s) break;
      est.pulls += 1;
      est.sum += cfg.sense == Sense::Minimize ? -*s : *s;
    }
    const double score = est.mean().value_or(-std::numeric_limits<double>::infinity());
    if (!best || score > best_score) {
      best = end;
      best_score = score;
    }
  }
  TrialRecord rec;
  rec.algo = "ed";
  rec.node = *best;
  rec.gap = oracle.values().gap(*best, cfg.sense);
  rec.samples = oracle.samples_used() - meter0;
  rec.time_ms = clock.elapsed_ms();
  return rec;
}

/// Union bound over rounds with H_s <= d / D_{1,s}^2:
///   d(d-1)/2 sum_s exp(-(T_s - d) D_{1,s}^2 / (d logbar(d))), clamped to [0, 1].
/// `smallest_gaps[s]` is the gap between the best and second-best arm at the
/// node visited in round s.
inline double ed_error_bound(std::size_t degree, std::span<const std::size_t> schedule,
                             std::span<const double> smallest_gaps) {
  if (schedule.size() != smallest_gaps.size()) throw std::invalid_argument("one gap per round expected");
  for (double g : smallest_gaps)
    if (!(g > 0.0)) throw std::invalid_argument("gaps must be strictly positive");
  const double d = static_cast<double>(degree);
  const double lb = logbar(degree);
  double sum = 0.0;
  for (std::size_t s = 0; s < schedule.size(); ++s) {
    const double spare = static_cast<double>(schedule[s]) - d;
    sum += std::exp(-spare * smallest_gaps[s] * smallest_gaps[s] / (d * lb));
  }
  return std::clamp(d * (d - 1.0) / 2.0 * sum, 0.0, 1.0);
}

}  // namespace graphopt
