#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "graphopt/graph.hpp"
#include "graphopt/rng.hpp"
#include "graphopt/values.hpp"

namespace graphopt {

/// Synthetic grid: nodes are the integer points (x, y) with |x|, |y| <= D,
/// joined to their in-grid plane neighbors, then topped up with random
/// undirected edges to `target_degree`.
struct GridSpec {
  int half_width = 10;
  std::size_t target_degree = 15;
  std::uint64_t seed = 0;
};

struct GridInstance {
  Graph graph;
  ValueTable values;
};

inline std::size_t grid_side(int half_width) { return static_cast<std::size_t>(2 * half_width + 1); }

inline NodeId grid_node(int half_width, int x, int y) {
  if (x < -half_width || x > half_width || y < -half_width || y > half_width)
    throw std::out_of_range("grid point (" + std::to_string(x) + ", " + std::to_string(y) + ") outside grid");
  return static_cast<NodeId>(static_cast<std::size_t>(y + half_width) * grid_side(half_width) +
                             static_cast<std::size_t>(x + half_width));
}

inline std::pair<int, int> grid_coords(int half_width, NodeId id) {
  const auto side = grid_side(half_width);
  return {static_cast<int>(id % side) - half_width, static_cast<int>(id / side) - half_width};
}

/// Mean 0.8 (1 - (x^2 + y^2) / (2 D^2)) at every grid node, in [0, 0.8] and
/// maximal at the center. Instantiate with an exact rational type to get the
/// values without rounding.
template <class Scalar = double>
std::vector<Scalar> grid_values(int half_width) {
  const auto side = grid_side(half_width);
  std::vector<Scalar> out;
  out.reserve(side * side);
  // One division of exact integers, so doubles come out correctly rounded.
  const long long scale = 2LL * half_width * half_width;
  for (NodeId id = 0; id < side * side; ++id) {
    auto [x, y] = grid_coords(half_width, id);
    out.push_back(Scalar(4 * (scale - x * x - y * y)) / Scalar(5 * scale));
  }
  return out;
}

inline GraphBuilder plain_grid_builder(int half_width) {
  if (half_width < 1) throw std::invalid_argument("grid half-width must be >= 1");
  const int D = half_width;
  GraphBuilder b(grid_side(D) * grid_side(D), false);
  for (int y = -D; y <= D; ++y)
    for (int x = -D; x <= D; ++x)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if ((dx == 0 && dy == 0) || x + dx < -D || x + dx > D || y + dy < -D || y + dy > D) continue;
          b.add_edge(grid_node(D, x, y), grid_node(D, x + dx, y + dy));
        }
  return b;
}

/// The 8-neighbor grid with no extra edges.
inline Graph make_plain_grid_graph(int half_width) { return plain_grid_builder(half_width).build(); }

namespace detail {

// Stuck with a below-target pair (a, c) that is already adjacent: trade an
// added edge (p, q) for (a, p) and (c, q). Degrees of p and q are unchanged,
// a and c each gain one.
inline bool swap_in(GraphBuilder& b, const std::vector<NodeId>& below, const GraphBuilder& base, Rng& rng) {
  const NodeId a = below[0], c = below[1];
  std::vector<std::pair<NodeId, NodeId>> options;
  for (NodeId p = 0; p < b.size(); ++p) {
    if (p == a || p == c || b.has_edge(a, p)) continue;
    for (NodeId q = 0; q < b.size(); ++q)
      if (q != a && q != c && q != p && b.has_edge(p, q) && !base.has_edge(p, q) && !b.has_edge(c, q))
        options.emplace_back(p, q);
  }
  if (options.empty()) return false;
  auto [p, q] = options[uniform_index(rng, options.size())];
  b.remove_edge(p, q);
  b.add_edge(a, p);
  b.add_edge(c, q);
  return true;
}

// Random undirected edges between distinct non-adjacent nodes that are both
// below `target`. Pairs are drawn uniformly from the below-target set; after a
// run of rejections the remaining valid pairs are enumerated explicitly. When
// none remain, swap_in trades an existing extra edge; failing that we stop.
inline void augment_to_degree(GraphBuilder& b, std::size_t target, Rng& rng) {
  const GraphBuilder base = b;
  std::vector<NodeId> below;
  std::vector<std::size_t> slot(b.size(), SIZE_MAX);
  for (NodeId u = 0; u < b.size(); ++u)
    if (b.degree(u) < target) {
      slot[u] = below.size();
      below.push_back(u);
    }
  auto drop_if_full = [&](NodeId u) {
    if (b.degree(u) < target || slot[u] == SIZE_MAX) return;
    const NodeId last = below.back();
    below[slot[u]] = last;
    slot[last] = slot[u];
    below.pop_back();
    slot[u] = SIZE_MAX;
  };

  constexpr int kMaxRejections = 64;
  int rejections = 0;
  while (below.size() >= 2) {
    NodeId a = 0, c = 0;
    if (rejections < kMaxRejections) {
      a = below[uniform_index(rng, below.size())];
      c = below[uniform_index(rng, below.size())];
      if (a == c || b.has_edge(a, c)) {
        ++rejections;
        continue;
      }
    } else {
      std::vector<std::pair<NodeId, NodeId>> candidates;
      for (std::size_t i = 0; i < below.size(); ++i)
        for (std::size_t j = i + 1; j < below.size(); ++j)
          if (!b.has_edge(below[i], below[j])) candidates.emplace_back(below[i], below[j]);
      if (candidates.empty()) {
        if (!detail::swap_in(b, below, base, rng)) break;
        for (std::size_t i = below.size(); i-- > 0;) drop_if_full(below[i]);
        continue;
      }
      std::tie(a, c) = candidates[uniform_index(rng, candidates.size())];
    }
    rejections = 0;
    b.add_edge(a, c);
    drop_if_full(a);
    drop_if_full(c);
  }
}

}  // namespace detail

/// Grid graph plus its value table. Deterministic given the seed.
inline GridInstance make_grid_graph(const GridSpec& spec) {
  if (spec.half_width < 1) throw std::invalid_argument("grid half-width must be >= 1");
  if (spec.target_degree < 8) throw std::invalid_argument("grid target degree must be >= 8");
  const auto n = grid_side(spec.half_width) * grid_side(spec.half_width);
  if (spec.target_degree >= n)
    throw std::invalid_argument("target degree " + std::to_string(spec.target_degree) +
                                " unreachable on " + std::to_string(n) + " nodes");
  auto b = plain_grid_builder(spec.half_width);
  Rng rng(hash_seed({0x67726964ull, spec.seed}));
  detail::augment_to_degree(b, spec.target_degree, rng);
  return {std::move(b).build(), ValueTable(grid_values<double>(spec.half_width))};
}

}  // namespace graphopt
