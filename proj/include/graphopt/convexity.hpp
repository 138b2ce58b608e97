#pragma once

// Certificates for graph convexity of a function under minimization.
//
// A path x0 -> x1 -> ... -> xk is m-strongly convex when every step improves
// (D_i = f(x_{i-1}) - f(x_i) > 0) and improvements shrink geometrically:
// D_i - D_{i+1} >= m D_{i+1}. A function is m-strongly convex when every node
// has such a path to the global minimizer.
//
// (alpha, c, r)-near convexity relaxes this: the core set C holds nodes whose
// best neighbor improvement is at least alpha times their gap, and every other
// node must reach C within r hops without climbing more than c above itself.
//
// All routines are templates over the scalar so they run on doubles or on
// exact rationals (exact.hpp). Comparisons are exact; there is no tolerance.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphopt/graph.hpp"

namespace graphopt {

namespace detail {

template <class Scalar>
void check_values(const Graph& g, std::span<const Scalar> f) {
  if (f.size() != g.size())
    throw std::invalid_argument("value count " + std::to_string(f.size()) + " != node count " +
                                std::to_string(g.size()));
  if (f.empty()) throw std::invalid_argument("empty graph");
}

// Both the path check and the certifier go through this one predicate so they
// agree bit-for-bit on floating-point inputs.
template <class Scalar>
bool convex_step(const Scalar& prev, const Scalar& next, const Scalar& m) {
  return prev - next >= m * next;
}

template <class Scalar>
NodeId lowest_minimizer(std::span<const Scalar> f) {
  NodeId best = 0;
  for (NodeId i = 1; i < f.size(); ++i)
    if (f[i] < f[best]) best = i;
  return best;
}

}  // namespace detail

/// f(x) - f(z) for an edge x -> z.
template <class Scalar>
Scalar improvement_delta(const Graph& g, std::span<const Scalar> f, NodeId x, NodeId z) {
  if (!g.contains(x) || !g.contains(z) || !g.has_edge(x, z))
    throw GraphError("node " + std::to_string(z) + " is not a neighbor of " + std::to_string(x));
  return f[x] - f[z];
}

/// Largest improvement over the neighbors of x; negative at a strict local
/// minimum.
template <class Scalar>
Scalar best_improvement(const Graph& g, std::span<const Scalar> f, NodeId x) {
  auto nb = g.neighbors(x);
  if (nb.empty()) throw GraphError("node " + std::to_string(x) + " has no neighbors");
  Scalar best = f[x] - f[nb[0]];
  for (std::size_t i = 1; i < nb.size(); ++i) {
    Scalar d = f[x] - f[nb[i]];
    if (d > best) best = d;
  }
  return best;
}

template <class Scalar>
bool is_strongly_convex_path(const Graph& g, std::span<const Scalar> f, const Path& p, const Scalar& m) {
  if (!(m > Scalar(0))) throw std::invalid_argument("convexity constant m must be positive");
  if (p.length() < 1) throw std::invalid_argument("path needs at least one edge");
  detail::check_values(g, f);
  std::optional<Scalar> prev;
  for (std::size_t i = 1; i < p.nodes.size(); ++i) {
    Scalar d = improvement_delta(g, f, p.nodes[i - 1], p.nodes[i]);
    if (!(d > Scalar(0))) return false;
    if (prev && !detail::convex_step(*prev, d, m)) return false;
    prev = std::move(d);
  }
  return true;
}

/// Along an m-strongly convex path whose first improvement is `delta`,
/// the start's gap to the minimum is at most (m + 1) / m * delta.
template <class Scalar>
Scalar descent_gap_bound(const Scalar& m, const Scalar& delta) {
  if (!(m > Scalar(0))) throw std::invalid_argument("convexity constant m must be positive");
  return (m + Scalar(1)) / m * delta;
}

template <class Scalar>
struct StrongConvexityCertificate {
  Scalar m;
  NodeId minimizer = 0;
  /// Other nodes sharing the minimum value. They can never be certified.
  std::vector<NodeId> tied_minimizers;
  /// Smallest first-step improvement of any m-strongly convex path from x to
  /// the minimizer; 0 at the minimizer, empty where no such path exists.
  std::vector<std::optional<Scalar>> first_step;
  /// Next node on the witness path.
  std::vector<std::optional<NodeId>> successor;
  std::vector<NodeId> uncertifiable;

  bool certified() const noexcept { return uncertifiable.empty(); }
  bool certified_at(NodeId x) const { return first_step.at(x).has_value(); }

  /// Witness path from x to the minimizer (a single node when x is it).
  Path witness(NodeId x) const {
    if (!certified_at(x)) throw std::logic_error("node " + std::to_string(x) + " has no convex path");
    Path p{{x}};
    while (p.nodes.back() != minimizer) p.nodes.push_back(*successor[p.nodes.back()]);
    return p;
  }
};

/// Dynamic program over nodes in increasing value order:
///   M(x*) = 0,
///   M(x)  = min { D(x,z) : z a neighbor, D(x,z) > 0, M(z) defined,
///                 D(x,z) - M(z) >= m M(z) }.
/// Keeping only the smallest feasible first step is enough: a predecessor's
/// constraint only bounds this step from above.
template <class Scalar>
StrongConvexityCertificate<Scalar> certify_strongly_convex(const Graph& g, std::span<const Scalar> f,
                                                           const Scalar& m) {
  if (!(m > Scalar(0))) throw std::invalid_argument("convexity constant m must be positive");
  detail::check_values(g, f);
  const std::size_t n = g.size();
  StrongConvexityCertificate<Scalar> cert;
  cert.m = m;
  cert.minimizer = detail::lowest_minimizer(f);
  cert.first_step.assign(n, std::nullopt);
  cert.successor.assign(n, std::nullopt);
  for (NodeId i = 0; i < n; ++i)
    if (i != cert.minimizer && f[i] == f[cert.minimizer]) cert.tied_minimizers.push_back(i);

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return f[a] < f[b]; });

  cert.first_step[cert.minimizer] = Scalar(0);
  for (NodeId x : order) {
    if (x == cert.minimizer) continue;
    std::optional<Scalar> best;
    NodeId via = 0;
    for (NodeId z : g.neighbors(x)) {
      const auto& mz = cert.first_step[z];
      if (!mz) continue;
      Scalar d = f[x] - f[z];
      if (!(d > Scalar(0)) || !detail::convex_step(d, *mz, m)) continue;
      if (!best || d < *best) {
        best = std::move(d);
        via = z;
      }
    }
    if (best) {
      cert.first_step[x] = std::move(best);
      cert.successor[x] = via;
    }
  }
  for (NodeId x = 0; x < n; ++x)
    if (!cert.first_step[x]) cert.uncertifiable.push_back(x);
  return cert;
}

template <class Scalar>
struct NearConvexityReport {
  Scalar alpha;
  Scalar c;
  NodeId minimizer = 0;
  /// Membership in the core set. The minimizer is always a member.
  std::vector<bool> in_core;
  /// Hops of the shortest low-energy path into the core; 0 for core members,
  /// empty for nodes that cannot reach it.
  std::vector<std::optional<std::size_t>> hops;
  /// Low-energy path from each node to its nearest core node.
  std::vector<Path> witness;
  std::vector<NodeId> infeasible;
  /// Largest hop count over non-core nodes.
  std::size_t radius = 0;

  bool feasible() const noexcept { return infeasible.empty(); }
};

/// Core set {x : max improvement >= alpha (f(x) - f(x*))} plus x*, then per
/// non-core node a BFS restricted to nodes z with f(z) - f(x) <= c.
template <class Scalar>
NearConvexityReport<Scalar> certify_nearly_convex(const Graph& g, std::span<const Scalar> f, const Scalar& alpha,
                                                  const Scalar& c) {
  if (!(alpha > Scalar(0))) throw std::invalid_argument("alpha must be positive");
  if (c < Scalar(0)) throw std::invalid_argument("elevation cap c must be >= 0");
  detail::check_values(g, f);
  const std::size_t n = g.size();
  NearConvexityReport<Scalar> rep;
  rep.alpha = alpha;
  rep.c = c;
  rep.minimizer = detail::lowest_minimizer(f);
  rep.in_core.assign(n, false);
  rep.hops.assign(n, std::nullopt);
  rep.witness.assign(n, Path{});

  const Scalar& fmin = f[rep.minimizer];
  for (NodeId x = 0; x < n; ++x) {
    if (x == rep.minimizer) {
      rep.in_core[x] = true;
    } else if (g.degree(x) > 0) {
      rep.in_core[x] = best_improvement(g, f, x) >= alpha * (f[x] - fmin);
    }
    if (rep.in_core[x]) {
      rep.hops[x] = 0;
      rep.witness[x] = Path{{x}};
    }
  }

  std::vector<std::size_t> dist(n);
  std::vector<NodeId> parent(n);
  std::vector<bool> seen(n);
  for (NodeId x = 0; x < n; ++x) {
    if (rep.in_core[x]) continue;
    std::fill(seen.begin(), seen.end(), false);
    std::deque<NodeId> queue{x};
    seen[x] = true;
    dist[x] = 0;
    std::optional<NodeId> hit;
    while (!queue.empty() && !hit) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (NodeId z : g.neighbors(u)) {
        if (seen[z] || !(f[z] - f[x] <= c)) continue;
        seen[z] = true;
        dist[z] = dist[u] + 1;
        parent[z] = u;
        if (rep.in_core[z]) {
          hit = z;
          break;
        }
        queue.push_back(z);
      }
    }
    if (!hit) {
      rep.infeasible.push_back(x);
      continue;
    }
    Path p;
    for (NodeId at = *hit; at != x; at = parent[at]) p.nodes.push_back(at);
    p.nodes.push_back(x);
    std::reverse(p.nodes.begin(), p.nodes.end());
    rep.hops[x] = dist[*hit];
    rep.radius = std::max(rep.radius, dist[*hit]);
    rep.witness[x] = std::move(p);
  }
  return rep;
}

/// Replays one node's low-energy witness: a valid path from x into the core,
/// at most `radius` hops, never more than c above f(x).
template <class Scalar>
bool verify_low_energy_witness(const Graph& g, std::span<const Scalar> f, const NearConvexityReport<Scalar>& rep,
                               NodeId x) {
  const Path& p = rep.witness.at(x);
  if (p.empty() || p.nodes.front() != x || !is_valid_path(g, p)) return false;
  if (!rep.in_core.at(p.nodes.back())) return false;
  if (p.length() > rep.radius) return false;
  for (NodeId z : p.nodes)
    if (!(f[z] - f[x] <= rep.c)) return false;
  return true;
}

/// An m-strongly convex function is (m / (m + 1), 0, 0)-nearly convex.
template <class Scalar>
Scalar near_convexity_alpha(const Scalar& m) {
  return m / (m + Scalar(1));
}

}  // namespace graphopt
