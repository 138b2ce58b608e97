#pragma once

#include <chrono>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>

#include "graphopt/graph.hpp"

namespace graphopt {

/// Outcome of one optimization run.
struct TrialRecord {
  std::size_t trial = 0;
  std::string algo;
  std::size_t budget = 0;
  /// Returned node; empty when the run failed.
  std::optional<NodeId> node;
  /// f(returned) - f(optimum), sign-normalized so 0 is optimal.
  double gap = std::numeric_limits<double>::quiet_NaN();
  /// Metered at the oracle.
  std::size_t samples = 0;
  double time_ms = 0.0;
  std::string error;

  bool failed() const noexcept { return !node.has_value(); }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace graphopt
