#include <random>

#include "doctest.h"
#include "gtmp/oracle.hpp"
#include "test_worlds.hpp"

using namespace gtmp;

TEST_CASE("oracle on a single chain") {
  CostMatrices C(1, 2, 1, 1);
  C.C_s(0, 0) = 1.0;
  C.C_h(0, 0, 0, 0) = 2.0;
  C.C_l(0, 0, 0) = 3.0;
  const auto r = dijkstra_oracle(C, GoalSet(std::vector<Vector>{{0.0}}));
  CHECK(r[0].cost == 6.0);
  CHECK(r[0].waypoint_index == std::vector<std::size_t>{0, 0});
}

TEST_CASE("oracle with every goal edge blocked") {
  CostMatrices C(1, 2, 3, 2);
  std::fill(C.start.begin(), C.start.end(), 1.0);
  std::fill(C.inner.begin(), C.inner.end(), 1.0);
  std::fill(C.last.begin(), C.last.end(), kInf);
  CHECK(dijkstra_oracle(C, GoalSet(std::vector<Vector>{{0.0}, {1.0}}))[0].cost == kInf);
}

TEST_CASE("oracle matches value iteration and the traced path on planned instances") {
  std::mt19937_64 rng(90);
  std::size_t compared = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const World w = World::from_grid(gtmp::testing::random_rect_grid(rng, 40, 0.25, 6, 3, 10));
    Vector q0, g0, g1;
    if (!gtmp::testing::random_free_point(w, rng, q0) || !gtmp::testing::random_free_point(w, rng, g0) ||
        !gtmp::testing::random_free_point(w, rng, g1)) {
      continue;
    }
    const GoalSet goals({g0, g1}, {0.0, 0.5});
    const PlannerParams p{4, 6, 10, 3, static_cast<std::uint64_t>(trial)};
    const WaypointTensor Q = sample_waypoints(p, w.limits());
    const CostMatrices C = build_cost_matrices(w, q0, Q, goals, p.H);
    const ValueMatrices V = value_iteration(C, goals);
    const PlanResult r = trace_path(C, V, Q, goals, q0);
    const auto oracle = dijkstra_oracle(C, goals);
    for (std::size_t b = 0; b < p.B; ++b) {
      CHECK(oracle[b].cost == V.start[b]);
      if (std::isfinite(oracle[b].cost)) {
        CHECK(oracle[b].waypoint_index == r.waypoint_index[b]);
        CHECK(oracle[b].goal_index == r.goal_index[b]);
        ++compared;
      }
    }
  }
  CHECK(compared > 20);
}

TEST_CASE("oracle breaks ties toward the lowest index") {
  CostMatrices C(1, 2, 3, 1);
  std::fill(C.start.begin(), C.start.end(), 1.0);
  std::fill(C.inner.begin(), C.inner.end(), 1.0);
  std::fill(C.last.begin(), C.last.end(), 1.0);
  const auto r = dijkstra_oracle(C, GoalSet(std::vector<Vector>{{0.0}}));
  CHECK(r[0].cost == 3.0);
  CHECK(r[0].waypoint_index == std::vector<std::size_t>{0, 0});
}
