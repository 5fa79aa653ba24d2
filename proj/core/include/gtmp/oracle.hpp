#pragma once

#include <vector>

#include "gtmp/planner.hpp"

namespace gtmp {

struct OracleResult {
  double cost = kInf;
  std::vector<std::size_t> waypoint_index;  ///< one layer-local index per layer
  std::size_t goal_index = 0;
};

/// Exact shortest paths on the explicitly enumerated multipartite graph,
/// one per batch entry. Runs Dijkstra from the goals over reversed edges so
/// that cost-to-go sums associate exactly like the Bellman backup, and breaks
/// ties toward the lowest layer-local index. Intended for small instances.
std::vector<OracleResult> dijkstra_oracle(const CostMatrices& costs, const GoalSet& goals);

}  // namespace gtmp
