#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphopt/graph.hpp"

namespace graphopt {

/// Whether the optimum is the smallest or the largest mean.
enum class Sense { Minimize, Maximize };

inline const char* to_string(Sense s) { return s == Sense::Minimize ? "min" : "max"; }

/// Ground-truth mean per node. Immutable once built; shared read-only by
/// oracles running in parallel.
class ValueTable {
 public:
  ValueTable() = default;
  explicit ValueTable(std::vector<double> means) : means_(std::move(means)) {
    for (std::size_t i = 0; i < means_.size(); ++i)
      if (!std::isfinite(means_[i]))
        throw std::invalid_argument("value of node " + std::to_string(i) + " is not finite");
  }

  std::size_t size() const noexcept { return means_.size(); }
  double operator[](NodeId x) const { return means_.at(x); }
  std::span<const double> means() const noexcept { return means_; }

  /// Optimal node for the given sense; ties go to the lowest id.
  NodeId optimum(Sense sense) const {
    if (means_.empty()) throw std::logic_error("empty value table");
    NodeId best = 0;
    for (NodeId i = 1; i < means_.size(); ++i) {
      const bool better = sense == Sense::Minimize ? means_[i] < means_[best] : means_[i] > means_[best];
      if (better) best = i;
    }
    return best;
  }

  /// Sub-optimality gap, normalized so the optimum scores 0.
  double gap(NodeId x, Sense sense) const {
    const double opt = means_[optimum(sense)];
    return sense == Sense::Minimize ? (*this)[x] - opt : opt - (*this)[x];
  }

  bool within_unit_interval() const noexcept {
    for (double v : means_)
      if (v < 0.0 || v > 1.0) return false;
    return true;
  }

  friend bool operator==(const ValueTable&, const ValueTable&) = default;

 private:
  std::vector<double> means_;
};

}  // namespace graphopt
