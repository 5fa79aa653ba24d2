#include "gtmp/planner.hpp"

#include <algorithm>
#include <string>

#include "gtmp/parallel.hpp"

namespace gtmp {

CostMatrices::CostMatrices(std::size_t B_, std::size_t M_, std::size_t N_, std::size_t G_)
    : B(B_), M(M_), N(N_), G(G_), start(B_ * N_, kInf), inner(B_ * (M_ - 1) * N_ * N_, kInf),
      last(B_ * N_ * G_, kInf) {}

std::size_t PlanResult::feasible_count() const {
  return static_cast<std::size_t>(std::count(feasible.begin(), feasible.end(), true));
}

CostMatrices build_cost_matrices(const World& world, VectorView q0, const WaypointTensor& Q,
                                 const GoalSet& goals, std::size_t H, unsigned threads) {
  if (H < 2) throw std::invalid_argument("build_cost_matrices: H must be at least 2");
  require_dim(q0.size(), world.dim(), "start configuration");
  require_dim(Q.d, world.dim(), "waypoint tensor");
  require_dim(goals.dim(), world.dim(), "goal set");
  if (Q.M < 1 || Q.N < 1 || Q.B < 1) throw DimensionError("build_cost_matrices: empty waypoint tensor");

  CostMatrices C(Q.B, Q.M, Q.N, goals.size());
  const std::size_t segments = Q.M + 1;
  // One work item per (batch entry, segment).
  parallel_for(
      Q.B * segments,
      [&](std::size_t item) {
        const std::size_t b = item / segments;
        const std::size_t seg = item % segments;
        if (seg == 0) {
          for (std::size_t i = 0; i < Q.N; ++i) {
            C.C_s(b, i) = edge_cost_unchecked(world, q0.data(), Q.point(b, 0, i), H);
          }
        } else if (seg == Q.M) {
          for (std::size_t i = 0; i < Q.N; ++i) {
            for (std::size_t g = 0; g < goals.size(); ++g) {
              C.C_l(b, i, g) = edge_cost_unchecked(world, Q.point(b, Q.M - 1, i), goals.goal(g), H);
            }
          }
        } else {
          const std::size_t m = seg - 1;
          for (std::size_t i = 0; i < Q.N; ++i) {
            for (std::size_t j = 0; j < Q.N; ++j) {
              C.C_h(b, m, i, j) = edge_cost_unchecked(world, Q.point(b, m, i), Q.point(b, m + 1, j), H);
            }
          }
        }
      },
      threads);
  return C;
}

ValueMatrices initial_values(const CostMatrices& costs, const GoalSet& goals) {
  require_dim(goals.size(), costs.G, "initial_values goals");
  ValueMatrices V;
  V.B = costs.B;
  V.M = costs.M;
  V.N = costs.N;
  V.G = costs.G;
  V.start.assign(V.B, kInf);
  V.layers.assign(V.B * V.M * V.N, kInf);
  V.goals.resize(V.B * V.G);
  for (std::size_t b = 0; b < V.B; ++b) {
    std::copy(goals.terminal_costs().begin(), goals.terminal_costs().end(),
              V.goals.begin() + static_cast<std::ptrdiff_t>(b * V.G));
  }
  return V;
}

void bellman_sweep(const CostMatrices& C, ValueMatrices& V) {
  const std::size_t M = C.M, N = C.N, G = C.G;
  // Batch entries are independent; layers within an entry go back to front.
  parallel_for(C.B, [&](std::size_t b) {
    for (std::size_t i = 0; i < N; ++i) {
      double best = kInf;
      for (std::size_t g = 0; g < G; ++g) best = std::min(best, C.C_l(b, i, g) + V.V_g(b, g));
      V.V_h(b, M - 1, i) = best;
    }
    for (std::size_t m = M - 1; m-- > 0;) {
      const double* next = &V.layers[(b * M + m + 1) * N];
      for (std::size_t i = 0; i < N; ++i) {
        const double* row = &C.inner[((b * (M - 1) + m) * N + i) * N];
        double best = kInf;
        for (std::size_t j = 0; j < N; ++j) best = std::min(best, row[j] + next[j]);
        V.V_h(b, m, i) = best;
      }
    }
    double best = kInf;
    for (std::size_t i = 0; i < N; ++i) best = std::min(best, C.C_s(b, i) + V.V_h(b, 0, i));
    V.start[b] = best;
  });
}

ValueMatrices value_iteration(const CostMatrices& costs, const GoalSet& goals) {
  ValueMatrices V = initial_values(costs, goals);
  for (std::size_t k = 0; k < costs.M + 1; ++k) bellman_sweep(costs, V);
  return V;
}

namespace {

// Lowest index among minimisers; 0 when every candidate is +inf.
template <class ValueAt>
std::size_t argmin(std::size_t count, ValueAt value_at) {
  std::size_t best_index = 0;
  double best = value_at(0);
  for (std::size_t k = 1; k < count; ++k) {
    const double v = value_at(k);
    if (v < best) {
      best = v;
      best_index = k;
    }
  }
  return best_index;
}

}  // namespace

PlanResult trace_path(const CostMatrices& C, const ValueMatrices& V, const WaypointTensor& Q,
                      const GoalSet& goals, VectorView q0) {
  if (V.B != C.B || V.M != C.M || V.N != C.N || V.G != C.G || Q.B != C.B || Q.M != C.M || Q.N != C.N) {
    throw DimensionError("trace_path: cost, value and waypoint shapes disagree");
  }
  const std::size_t M = C.M, N = C.N, G = C.G, d = Q.d;
  PlanResult result;
  result.paths.resize(C.B);
  result.optimal_values.resize(C.B);
  result.feasible.resize(C.B);
  result.goal_index.resize(C.B);
  result.waypoint_index.resize(C.B);
  for (std::size_t b = 0; b < C.B; ++b) {
    std::vector<std::size_t> idx(M);
    idx[0] = argmin(N, [&](std::size_t i) { return C.C_s(b, i) + V.V_h(b, 0, i); });
    for (std::size_t m = 1; m < M; ++m) {
      const std::size_t prev = idx[m - 1];
      idx[m] = argmin(N, [&](std::size_t j) { return C.C_h(b, m - 1, prev, j) + V.V_h(b, m, j); });
    }
    const std::size_t g = argmin(G, [&](std::size_t k) { return C.C_l(b, idx[M - 1], k) + V.V_g(b, k); });

    Path path;
    path.reserve(M + 2);
    path.emplace_back(q0.begin(), q0.end());
    for (std::size_t m = 0; m < M; ++m) path.emplace_back(Q.point(b, m, idx[m]), Q.point(b, m, idx[m]) + d);
    path.push_back(goals.goal_vector(g));

    const double value = V.start[b];
    if (is_feasible(value)) {
      // Re-accumulate the traced cost in cost-to-go order; it must reproduce V_s bit for bit.
      double acc = V.V_g(b, g);
      acc = C.C_l(b, idx[M - 1], g) + acc;
      for (std::size_t m = M - 1; m-- > 0;) acc = C.C_h(b, m, idx[m], idx[m + 1]) + acc;
      acc = C.C_s(b, idx[0]) + acc;
      if (acc != value) {
        throw std::logic_error("trace_path: traced cost " + std::to_string(acc) +
                               " does not match V_s " + std::to_string(value));
      }
    }
    result.paths[b] = std::move(path);
    result.optimal_values[b] = value;
    result.feasible[b] = is_feasible(value);
    result.goal_index[b] = g;
    result.waypoint_index[b] = std::move(idx);
  }
  return result;
}

void check_problem(const World& world, VectorView q0, const GoalSet& goals) {
  require_dim(q0.size(), world.dim(), "start configuration");
  require_dim(goals.dim(), world.dim(), "goal set");
  if (!world.is_free(q0.data())) throw InvalidProblem("start configuration is in collision");
  for (std::size_t g = 0; g < goals.size(); ++g) {
    if (world.is_free(goals.goal(g))) return;
  }
  throw InvalidProblem("every goal configuration is in collision");
}

PlanResult plan(const World& world, VectorView q0, const GoalSet& goals, const PlannerParams& params,
                unsigned threads) {
  params.validate();
  check_problem(world, q0, goals);
  const WaypointTensor Q = sample_waypoints(params, world.limits(), {}, threads);
  const CostMatrices C = build_cost_matrices(world, q0, Q, goals, params.H, threads);
  const ValueMatrices V = value_iteration(C, goals);
  return trace_path(C, V, Q, goals, q0);
}

}  // namespace gtmp
