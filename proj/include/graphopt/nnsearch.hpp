#pragma once

// SGNN: nearest-neighbor search as simulated annealing on a proximity graph,
// where a node's value is the query distance read at the end of a short
// random walk from it. T = 0 is plain annealing; T >= 1 smooths the landscape.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "graphopt/graph.hpp"
#include "graphopt/parallel.hpp"
#include "graphopt/points.hpp"
#include "graphopt/record.hpp"
#include "graphopt/rng.hpp"

namespace graphopt {

/// Per-query memo of exact distances; each node is computed at most once.
class DistanceCache {
 public:
  DistanceCache(const PointSet& points, std::span<const double> query)
      : points_(&points), query_(query), dist_(points.size(), std::numeric_limits<double>::quiet_NaN()) {
    if (query.size() != points.dim()) throw std::invalid_argument("query dimension mismatch");
  }

  double operator()(NodeId x) {
    double& d = dist_.at(x);
    if (std::isnan(d)) {
      d = euclidean_distance((*points_)[x], query_);
      evaluated_.push_back(x);
    }
    return d;
  }

  std::size_t evaluations() const noexcept { return evaluated_.size(); }
  std::span<const NodeId> evaluated() const noexcept { return evaluated_; }

 private:
  const PointSet* points_;
  std::span<const double> query_;
  std::vector<double> dist_;
  std::vector<NodeId> evaluated_;
};

inline constexpr double kTemperatureFloor = 1e-9;

/// Probability of moving from a node read at distance `current` to one read
/// at `proposed`: 1 for an improvement, exp((current - proposed) / tau)
/// otherwise. At or below the temperature floor nothing uphill is accepted.
inline double sgnn_acceptance(double current, double proposed, double tau) {
  if (proposed <= current) return 1.0;
  if (tau <= kTemperatureFloor) return 0.0;
  return std::exp((current - proposed) / tau);
}

struct SearchOptions {
  /// false turns the search into greedy hill climbing.
  bool allow_uphill = true;
};

/// J annealing iterations from `start` with temperature 1 - j/J.
inline NodeId smoothed_sa_search(const Graph& g, DistanceCache& dist, NodeId start, std::size_t rounds,
                                 std::size_t walk_length, Rng& rng, SearchOptions opt = {}) {
  if (!g.contains(start)) throw GraphError("start node " + std::to_string(start) + " out of range");
  NodeId x = start;
  for (std::size_t j = 1; j <= rounds; ++j) {
    const double fy = dist(random_walk(g, x, walk_length, rng).end);
    auto nb = g.neighbors(x);
    if (nb.empty()) break;
    const NodeId u = nb[uniform_index(rng, nb.size())];
    const double fv = dist(random_walk(g, u, walk_length, rng).end);
    if (fv <= fy) {
      x = u;
    } else if (opt.allow_uphill) {
      const double tau = 1.0 - static_cast<double>(j) / static_cast<double>(rounds);
      if (uniform01(rng) < sgnn_acceptance(fy, fv, tau)) x = u;
    }
  }
  return x;
}

struct QueryResult {
  /// Ascending by true distance, ties to the lower id.
  std::vector<NodeId> candidates;
  std::vector<double> distances;
  /// Unique exact distance computations.
  std::size_t distance_evals = 0;
  /// Fewer than K nodes were evaluated.
  bool short_pool = false;
};

struct SgnnParams {
  std::size_t restarts = 1;     // I
  std::size_t rounds = 1;       // J
  std::size_t walk_length = 1;  // T
  std::size_t k = 1;            // K
  SearchOptions search{};
};

/// ceil(ln n), the default number of annealing rounds and restarts.
inline std::size_t log_rounds(std::size_t n) {
  return n < 2 ? 1 : static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n))));
}

namespace detail {

inline QueryResult best_of(std::vector<std::pair<double, NodeId>> scored, std::size_t k, std::size_t evals) {
  std::sort(scored.begin(), scored.end());
  QueryResult r;
  r.distance_evals = evals;
  r.short_pool = scored.size() < k;
  const std::size_t take = std::min(k, scored.size());
  for (std::size_t i = 0; i < take; ++i) {
    r.distances.push_back(scored[i].first);
    r.candidates.push_back(scored[i].second);
  }
  return r;
}

}  // namespace detail

/// I restarts from uniform-random nodes. The candidate pool is every node
/// whose distance was computed during the query, terminals included; the K
/// nearest pool members are returned.
inline QueryResult sgnn_query(const Graph& g, const PointSet& points, std::span<const double> query,
                              const SgnnParams& p, Rng& rng) {
  if (g.size() != points.size()) throw std::invalid_argument("graph and point set sizes differ");
  if (g.size() == 0) throw std::invalid_argument("empty point set");
  if (p.k == 0) throw std::invalid_argument("K must be >= 1");
  DistanceCache dist(points, query);
  for (std::size_t i = 0; i < p.restarts; ++i) {
    const NodeId start = static_cast<NodeId>(uniform_index(rng, g.size()));
    dist(smoothed_sa_search(g, dist, start, p.rounds, p.walk_length, rng, p.search));
  }
  std::vector<std::pair<double, NodeId>> scored;
  scored.reserve(dist.evaluations());
  for (NodeId x : dist.evaluated()) scored.emplace_back(dist(x), x);
  return detail::best_of(std::move(scored), p.k, dist.evaluations());
}

/// Exhaustive scan; distance_evals = n.
inline QueryResult exact_nn(const PointSet& points, std::span<const double> query, std::size_t k) {
  if (k == 0 || k > points.size()) throw std::invalid_argument("exact search needs 1 <= K <= n");
  std::vector<std::pair<double, NodeId>> scored;
  scored.reserve(points.size());
  for (NodeId i = 0; i < points.size(); ++i) scored.emplace_back(euclidean_distance(points[i], query), i);
  return detail::best_of(std::move(scored), k, points.size());
}

/// Fraction of the exact top-K present in the approximate candidates.
inline double recall_at_k(const QueryResult& approx, const QueryResult& exact) {
  if (exact.candidates.empty()) throw std::invalid_argument("empty exact result");
  std::unordered_set<NodeId> truth(exact.candidates.begin(), exact.candidates.end());
  std::size_t hit = 0;
  for (NodeId x : approx.candidates) hit += truth.count(x);
  return static_cast<double>(hit) / static_cast<double>(exact.candidates.size());
}

/// Modal label among the candidates (nearest first); ties go to the label of
/// the nearest tied candidate.
inline int classify_majority(std::span<const NodeId> candidates, std::span<const int> labels) {
  if (candidates.empty()) throw std::invalid_argument("no candidates to vote");
  std::map<int, std::size_t> votes;
  for (NodeId c : candidates) {
    if (c >= labels.size()) throw std::invalid_argument("candidate " + std::to_string(c) + " has no label");
    ++votes[labels[c]];
  }
  std::size_t top = 0;
  for (auto& [_, v] : votes) top = std::max(top, v);
  for (NodeId c : candidates)
    if (votes[labels[c]] == top) return labels[c];
  return labels[candidates.front()];
}

enum class NnAlgo { Sgnn, Exact };

struct NnRow {
  std::size_t query_id = 0;
  NnAlgo algo = NnAlgo::Sgnn;
  int predicted_label = 0;
  double recall = 0.0;
  std::size_t distance_evals = 0;
  double time_ms = 0.0;
  bool short_pool = false;
};

/// Answers every query (row of `queries`) and scores it against exact_nn.
/// Query q uses the rng stream hash(seed, q).
inline std::vector<NnRow> run_nn_benchmark(const Graph& g, const PointSet& points, const PointSet& queries,
                                           NnAlgo algo, const SgnnParams& p, std::uint64_t seed,
                                           std::size_t threads = 0) {
  if (!points.has_labels()) throw std::invalid_argument("training points need labels");
  if (queries.dim() != points.dim()) throw std::invalid_argument("query dimension mismatch");
  std::vector<NnRow> rows(queries.size());
  parallel_for(queries.size(), threads, [&](std::size_t q) {
    NnRow& row = rows[q];
    row.query_id = q;
    row.algo = algo;
    Stopwatch clock;
    QueryResult res;
    if (algo == NnAlgo::Exact) {
      res = exact_nn(points, queries[q], p.k);
    } else {
      Rng rng = make_rng({seed, q});
      res = sgnn_query(g, points, queries[q], p, rng);
    }
    row.time_ms = clock.elapsed_ms();
    row.distance_evals = res.distance_evals;
    row.short_pool = res.short_pool;
    row.predicted_label = res.candidates.empty() ? 0 : classify_majority(res.candidates, points.labels());
    row.recall = algo == NnAlgo::Exact ? 1.0 : recall_at_k(res, exact_nn(points, queries[q], p.k));
  });
  return rows;
}

}  // namespace graphopt
