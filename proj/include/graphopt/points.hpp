#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphopt/graph.hpp"
#include "graphopt/rng.hpp"

namespace graphopt {

/// Equal-dimension real vectors stored row-major, with optional class labels.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t dim, std::vector<double> coords, std::optional<std::vector<int>> labels = std::nullopt)
      : dim_(dim), coords_(std::move(coords)), labels_(std::move(labels)) {
    if (dim_ == 0) throw std::invalid_argument("point dimension must be positive");
    if (coords_.size() % dim_ != 0) throw std::invalid_argument("coordinate count not a multiple of dimension");
    if (labels_ && labels_->size() != size())
      throw std::invalid_argument("label count " + std::to_string(labels_->size()) + " != point count " +
                                  std::to_string(size()));
  }

  static PointSet from_rows(const std::vector<std::vector<double>>& rows,
                            std::optional<std::vector<int>> labels = std::nullopt) {
    if (rows.empty()) throw std::invalid_argument("empty point set");
    const std::size_t dim = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != dim)
        throw std::invalid_argument("row " + std::to_string(i) + " has dimension " + std::to_string(rows[i].size()) +
                                    ", expected " + std::to_string(dim));
      flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    return PointSet(dim, std::move(flat), std::move(labels));
  }

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> operator[](std::size_t i) const {
    if (i >= size()) throw std::out_of_range("point index " + std::to_string(i));
    return {coords_.data() + i * dim_, dim_};
  }
  bool has_labels() const noexcept { return labels_.has_value(); }
  int label(std::size_t i) const {
    if (!labels_) throw std::logic_error("point set has no labels");
    return labels_->at(i);
  }
  std::span<const int> labels() const {
    if (!labels_) throw std::logic_error("point set has no labels");
    return *labels_;
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::optional<std::vector<int>> labels_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

/// Directed proximity graph: node i points at its N nearest other points by
/// Euclidean distance, ties to the lower id. Brute force, O(n^2 dim).
inline Graph make_knn_graph(const PointSet& points, std::size_t neighbors) {
  const std::size_t n = points.size();
  if (neighbors == 0 || neighbors >= n)
    throw std::invalid_argument("proximity graph needs 0 < N < n (N=" + std::to_string(neighbors) +
                                ", n=" + std::to_string(n) + ")");
  std::vector<std::vector<NodeId>> adj(n);
  std::vector<std::pair<double, NodeId>> scratch;
  scratch.reserve(n - 1);
  for (NodeId i = 0; i < n; ++i) {
    scratch.clear();
    for (NodeId j = 0; j < n; ++j)
      if (j != i) scratch.emplace_back(squared_distance(points[i], points[j]), j);
    std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(neighbors - 1), scratch.end());
    // nth_element leaves everything <= the pivot in front; the pair ordering
    // already encodes the lower-id tie rule.
    auto& out = adj[i];
    out.reserve(neighbors);
    for (std::size_t k = 0; k < neighbors; ++k) out.push_back(scratch[k].second);
  }
  return Graph::from_adjacency(std::move(adj), true);
}

/// Two isotropic unit-variance Gaussian classes in `dim` dimensions whose
/// centers are `separation` apart along the all-ones direction. Labels
/// alternate 0, 1, 0, ... so any prefix is balanced.
inline PointSet make_two_gaussian_cloud(std::size_t n, std::size_t dim, double separation, std::uint64_t seed) {
  if (n == 0 || dim == 0) throw std::invalid_argument("cloud needs n > 0 and dim > 0");
  Rng rng(hash_seed({0x636c6f7564ull, seed}));
  std::normal_distribution<double> normal(0.0, 1.0);
  const double offset = 0.5 * separation / std::sqrt(static_cast<double>(dim));
  std::vector<double> coords;
  coords.reserve(n * dim);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = static_cast<int>(i % 2);
    const double center = labels[i] == 0 ? -offset : offset;
    for (std::size_t k = 0; k < dim; ++k) coords.push_back(center + normal(rng));
  }
  return PointSet(dim, std::move(coords), std::move(labels));
}

}  // namespace graphopt
