#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "graphopt/graph.hpp"

namespace testing_support {

/// Three binomial standard deviations of a frequency estimate.
inline double three_sigma(double p, std::size_t trials) {
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

inline graphopt::Graph path_graph(std::size_t n) {
  std::vector<std::pair<graphopt::NodeId, graphopt::NodeId>> e;
  for (graphopt::NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return graphopt::Graph::from_edges(n, false, e);
}

}  // namespace testing_support
