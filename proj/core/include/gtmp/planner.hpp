#pragma once

#include <vector>

#include "gtmp/config_space.hpp"
#include "gtmp/graph.hpp"

namespace gtmp {

/// Batched transition costs of the multipartite graph.
///   start: C_s (B, N)            q0 -> layer 0
///   inner: C_h (B, M-1, N, N)    layer m -> layer m+1 (empty when M == 1)
///   last:  C_l (B, N, G)         layer M-1 -> goal
struct CostMatrices {
  std::size_t B = 0, M = 0, N = 0, G = 0;
  std::vector<double> start;
  std::vector<double> inner;
  std::vector<double> last;

  CostMatrices() = default;
  CostMatrices(std::size_t B, std::size_t M, std::size_t N, std::size_t G);

  double& C_s(std::size_t b, std::size_t i) { return start[b * N + i]; }
  double C_s(std::size_t b, std::size_t i) const { return start[b * N + i]; }
  double& C_h(std::size_t b, std::size_t m, std::size_t i, std::size_t j) {
    return inner[((b * (M - 1) + m) * N + i) * N + j];
  }
  double C_h(std::size_t b, std::size_t m, std::size_t i, std::size_t j) const {
    return inner[((b * (M - 1) + m) * N + i) * N + j];
  }
  double& C_l(std::size_t b, std::size_t i, std::size_t g) { return last[(b * N + i) * G + g]; }
  double C_l(std::size_t b, std::size_t i, std::size_t g) const { return last[(b * N + i) * G + g]; }
};

/// Batched value functions: V_s (B), V_h (B, M, N), V_g (B, G).
struct ValueMatrices {
  std::size_t B = 0, M = 0, N = 0, G = 0;
  std::vector<double> start;
  std::vector<double> layers;
  std::vector<double> goals;

  double& V_h(std::size_t b, std::size_t m, std::size_t i) { return layers[(b * M + m) * N + i]; }
  double V_h(std::size_t b, std::size_t m, std::size_t i) const { return layers[(b * M + m) * N + i]; }
  double V_g(std::size_t b, std::size_t g) const { return goals[b * G + g]; }
};

using Path = std::vector<Vector>;

struct PlanResult {
  std::vector<Path> paths;                         ///< B paths of M+2 nodes
  std::vector<double> optimal_values;              ///< V_s per batch entry
  std::vector<bool> feasible;
  std::vector<std::size_t> goal_index;
  std::vector<std::vector<std::size_t>> waypoint_index;  ///< layer-local index per layer

  std::size_t batch_size() const { return paths.size(); }
  std::size_t feasible_count() const;
  bool operator==(const PlanResult&) const = default;
};

CostMatrices build_cost_matrices(const World& world, VectorView q0, const WaypointTensor& Q,
                                 const GoalSet& goals, std::size_t H, unsigned threads = 0);

/// Values initialised for iteration: V_s = V_h = +inf, V_g = terminal costs.
ValueMatrices initial_values(const CostMatrices& costs, const GoalSet& goals);

/// One in-place back-to-front Bellman sweep over every batch entry.
void bellman_sweep(const CostMatrices& costs, ValueMatrices& values);

/// Exactly M+1 Bellman sweeps from initial_values.
ValueMatrices value_iteration(const CostMatrices& costs, const GoalSet& goals);

/// Greedy argmin trace over converged values; ties go to the lowest index.
/// Emits a path for every batch entry, feasible or not.
PlanResult trace_path(const CostMatrices& costs, const ValueMatrices& values,
                      const WaypointTensor& Q, const GoalSet& goals, VectorView q0);

inline bool is_feasible(double start_value) { return start_value < kInf; }

/// Validates that q0 and at least one goal are collision-free.
void check_problem(const World& world, VectorView q0, const GoalSet& goals);

/// Sample, build costs, iterate values, trace. Deterministic in params.seed.
PlanResult plan(const World& world, VectorView q0, const GoalSet& goals, const PlannerParams& params,
                unsigned threads = 0);

}  // namespace gtmp
