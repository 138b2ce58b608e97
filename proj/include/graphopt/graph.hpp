#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphopt/rng.hpp"

namespace graphopt {

using NodeId = std::uint32_t;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adjacency-list graph over nodes 0..n-1.
///
/// Neighbor lists are sorted ascending and hold no duplicates or self-loops.
/// For undirected graphs every edge is stored in both endpoint lists; for
/// directed graphs the lists hold out-neighbors only.
class Graph {
 public:
  Graph() = default;

  /// Validates and normalizes (sorts) the lists. Throws GraphError on
  /// out-of-range ids, self-loops, duplicates, or asymmetric undirected input.
  static Graph from_adjacency(std::vector<std::vector<NodeId>> adjacency, bool directed) {
    const std::size_t n = adjacency.size();
    for (std::size_t u = 0; u < n; ++u) {
      auto& list = adjacency[u];
      std::sort(list.begin(), list.end());
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (list[i] >= n)
          throw GraphError("node " + std::to_string(u) + ": neighbor " + std::to_string(list[i]) +
                           " out of range [0, " + std::to_string(n) + ")");
        if (list[i] == u) throw GraphError("self-loop at node " + std::to_string(u));
        if (i > 0 && list[i] == list[i - 1])
          throw GraphError("duplicate edge " + std::to_string(u) + " " + std::to_string(list[i]));
      }
    }
    Graph g;
    g.directed_ = directed;
    g.adjacency_ = std::move(adjacency);
    if (!directed) {
      for (NodeId u = 0; u < n; ++u)
        for (NodeId v : g.adjacency_[u])
          if (!g.has_edge(v, u))
            throw GraphError("undirected edge " + std::to_string(u) + " " + std::to_string(v) +
                             " has no reverse");
    }
    return g;
  }

  /// Builds from an edge list. For undirected graphs each edge appears once
  /// (either orientation).
  static Graph from_edges(std::size_t n, bool directed,
                          std::span<const std::pair<NodeId, NodeId>> edges) {
    std::vector<std::vector<NodeId>> adj(n);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n)
        throw GraphError("edge " + std::to_string(u) + " " + std::to_string(v) + " out of range");
      adj[u].push_back(v);
      if (!directed && u != v) adj[v].push_back(u);
    }
    return from_adjacency(std::move(adj), directed);
  }

  std::size_t size() const noexcept { return adjacency_.size(); }
  bool directed() const noexcept { return directed_; }
  bool contains(NodeId u) const noexcept { return u < adjacency_.size(); }

  std::span<const NodeId> neighbors(NodeId u) const { return adjacency_.at(u); }
  std::size_t degree(NodeId u) const { return adjacency_.at(u).size(); }

  bool has_edge(NodeId u, NodeId v) const {
    const auto& list = adjacency_.at(u);
    return std::binary_search(list.begin(), list.end(), v);
  }

  /// Number of stored arcs for directed graphs, of edges for undirected ones.
  std::size_t edge_count() const noexcept {
    std::size_t arcs = 0;
    for (const auto& l : adjacency_) arcs += l.size();
    return directed_ ? arcs : arcs / 2;
  }

  std::size_t max_degree() const noexcept {
    std::size_t d = 0;
    for (const auto& l : adjacency_) d = std::max(d, l.size());
    return d;
  }

  /// Edges in ascending (u, v) order; undirected graphs list u < v only.
  std::vector<std::pair<NodeId, NodeId>> edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId u = 0; u < size(); ++u)
      for (NodeId v : adjacency_[u])
        if (directed_ || u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  bool directed_ = false;
  std::vector<std::vector<NodeId>> adjacency_;
};

/// Incremental construction with sorted insertion. add_edge returns false for
/// an edge that already exists.
class GraphBuilder {
 public:
  GraphBuilder(std::size_t n, bool directed) : directed_(directed), adjacency_(n) {}

  bool add_edge(NodeId u, NodeId v) {
    if (u >= adjacency_.size() || v >= adjacency_.size())
      throw GraphError("edge " + std::to_string(u) + " " + std::to_string(v) + " out of range");
    if (u == v) throw GraphError("self-loop at node " + std::to_string(u));
    if (!insert(u, v)) return false;
    if (!directed_) insert(v, u);
    return true;
  }

  bool remove_edge(NodeId u, NodeId v) {
    if (!erase(u, v)) return false;
    if (!directed_) erase(v, u);
    return true;
  }

  bool has_edge(NodeId u, NodeId v) const {
    const auto& l = adjacency_.at(u);
    return std::binary_search(l.begin(), l.end(), v);
  }

  std::size_t degree(NodeId u) const { return adjacency_.at(u).size(); }
  std::size_t size() const noexcept { return adjacency_.size(); }

  Graph build() && { return Graph::from_adjacency(std::move(adjacency_), directed_); }

 private:
  bool insert(NodeId u, NodeId v) {
    auto& l = adjacency_[u];
    auto it = std::lower_bound(l.begin(), l.end(), v);
    if (it != l.end() && *it == v) return false;
    l.insert(it, v);
    return true;
  }

  bool erase(NodeId u, NodeId v) {
    auto& l = adjacency_.at(u);
    auto it = std::lower_bound(l.begin(), l.end(), v);
    if (it == l.end() || *it != v) return false;
    l.erase(it);
    return true;
  }

  bool directed_;
  std::vector<std::vector<NodeId>> adjacency_;
};

/// Ordered node sequence; consecutive nodes adjacent, no repeats.
struct Path {
  std::vector<NodeId> nodes;

  /// Number of edges.
  std::size_t length() const noexcept { return nodes.empty() ? 0 : nodes.size() - 1; }
  bool empty() const noexcept { return nodes.empty(); }
  friend bool operator==(const Path&, const Path&) = default;
};

inline bool is_valid_path(const Graph& g, const Path& p) {
  std::vector<bool> seen(g.size(), false);
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const NodeId u = p.nodes[i];
    if (!g.contains(u) || seen[u]) return false;
    seen[u] = true;
    if (i > 0 && !g.has_edge(p.nodes[i - 1], u)) return false;
  }
  return true;
}

struct WalkResult {
  NodeId end;
  /// Steps actually taken; fewer than requested when a node without
  /// out-neighbors was reached.
  std::size_t steps;
};

/// Walk of up to `length` uniform-random neighbor steps from `start`.
inline WalkResult random_walk(const Graph& g, NodeId start, std::size_t length, Rng& rng) {
  if (!g.contains(start)) throw GraphError("walk start " + std::to_string(start) + " out of range");
  NodeId at = start;
  std::size_t taken = 0;
  for (; taken < length; ++taken) {
    auto nb = g.neighbors(at);
    if (nb.empty()) break;
    at = nb[uniform_index(rng, nb.size())];
  }
  return {at, taken};
}

}  // namespace graphopt
