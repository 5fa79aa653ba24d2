#include <cmath>
#include <random>

#include "doctest.h"
#include "gtmp/planner.hpp"
#include "test_worlds.hpp"

using namespace gtmp;
using gtmp::testing::empty_world;

namespace {

WaypointTensor tensor_from(const std::vector<std::vector<Vector>>& layers) {
  WaypointTensor Q;
  Q.B = 1;
  Q.M = layers.size();
  Q.N = layers.front().size();
  Q.d = layers.front().front().size();
  for (const auto& layer : layers) {
    for (const auto& p : layer) Q.values.insert(Q.values.end(), p.begin(), p.end());
  }
  return Q;
}

// Straightforward per-edge reference: explicit probes, explicit sum.
double naive_edge_cost(const World& w, const Vector& a, const Vector& b, std::size_t H) {
  double coll = 0.0;
  for (std::size_t k = 0; k < H; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(H - 1);
    Vector p(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) p[c] = a[c] + t * (b[c] - a[c]);
    if (k == H - 1) p = b;
    coll += w.is_free(p.data()) ? 0.0 : kInf;
  }
  double len = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) len += (a[c] - b[c]) * (a[c] - b[c]);
  return coll / static_cast<double>(H) + std::sqrt(len);
}

// Grid with four rooms joined by narrow doors.
World rooms_world() {
  const std::size_t n = 100;
  std::vector<std::uint8_t> occ(n * n, 0);
  const auto set = [&](std::size_t x, std::size_t y) { occ[y * n + x] = 1; };
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t t = 48; t < 52; ++t) {
      set(t, k);
      set(k, t);
    }
  }
  // doors of 6 cells in each wall arm
  for (std::size_t t = 48; t < 52; ++t) {
    for (std::size_t k = 20; k < 26; ++k) {
      occ[k * n + t] = 0;        // lower vertical arm
      occ[(k + 55) * n + t] = 0; // upper vertical arm
      occ[t * n + k] = 0;        // left horizontal arm
    }
  }
  return World::from_grid(OccupancyGrid(n, n, std::move(occ), 0.0, 0.0, 0.1));
}

bool same_cost(double got, double want) {
  return std::isinf(want) ? got == want : got == doctest::Approx(want);
}

}  // namespace

TEST_CASE("cost matrices on an empty world are Euclidean lengths") {
  const World w = empty_world();
  const WaypointTensor Q = tensor_from({{{1.0, 0.0}}});
  const GoalSet goals({{2.0, 0.0}});
  const CostMatrices C = build_cost_matrices(w, Vector{0.0, 0.0}, Q, goals, 10);
  CHECK(C.start == std::vector<double>{1.0});
  CHECK(C.last == std::vector<double>{1.0});
  CHECK(C.inner.empty());
}

TEST_CASE("a waypoint inside an obstacle blocks every incident edge") {
  std::vector<std::uint8_t> occ(100, 0);
  occ[5 * 10 + 5] = 1;
  const World w = World::from_grid(OccupancyGrid(10, 10, occ, 0, 0, 1.0));
  const WaypointTensor Q = tensor_from({{{1.5, 1.5}, {5.5, 5.5}, {8.5, 1.5}}, {{1.5, 8.5}, {2.5, 8.5}, {8.5, 8.5}}});
  const GoalSet goals({{9.5, 9.5}, {0.5, 9.5}});
  const CostMatrices C = build_cost_matrices(w, Vector{0.5, 0.5}, Q, goals, 10);
  CHECK(C.C_s(0, 1) == kInf);
  for (std::size_t j = 0; j < 3; ++j) CHECK(C.C_h(0, 0, 1, j) == kInf);
  CHECK(std::isfinite(C.C_s(0, 0)));
}

TEST_CASE("cost matrices match a scalar per-edge loop on a grid") {
  std::mt19937_64 rng(21);
  const World w = World::from_grid(gtmp::testing::random_rect_grid(rng, 20, 0.5, 6, 2, 4));
  const PlannerParams p{2, 5, 7, 3, 5};
  const WaypointTensor Q = sample_waypoints(p, w.limits());
  const Vector q0{0.1, 0.1};
  const GoalSet goals({{9.9, 9.9}, {0.2, 9.7}});
  const CostMatrices C = build_cost_matrices(w, q0, Q, goals, p.H);
  const auto pt = [&](std::size_t b, std::size_t m, std::size_t i) { return Vector(Q.point(b, m, i), Q.point(b, m, i) + 2); };
  std::size_t finite = 0;
  for (std::size_t b = 0; b < p.B; ++b) {
    for (std::size_t i = 0; i < p.N; ++i) {
      CHECK(same_cost(C.C_s(b, i), naive_edge_cost(w, q0, pt(b, 0, i), p.H)));
      for (std::size_t j = 0; j < p.N; ++j) {
        const double expect = naive_edge_cost(w, pt(b, 0, i), pt(b, 1, j), p.H);
        CHECK(same_cost(C.C_h(b, 0, i, j), expect));
        finite += std::isfinite(expect);
      }
      for (std::size_t g = 0; g < 2; ++g) {
        CHECK(same_cost(C.C_l(b, i, g), naive_edge_cost(w, pt(b, 1, i), goals.goal_vector(g), p.H)));
      }
    }
  }
  CHECK(finite > 0);
}

TEST_CASE("cost matrices reject mismatched dimensions") {
  const World w = empty_world();
  const WaypointTensor Q = tensor_from({{{1.0, 0.0}}});
  CHECK_THROWS_AS(build_cost_matrices(w, Vector{0.0, 0.0, 0.0}, Q, GoalSet({{2.0, 0.0}}), 10), DimensionError);
  CHECK_THROWS_AS(build_cost_matrices(w, Vector{0.0, 0.0}, Q, GoalSet({{2.0, 0.0, 1.0}}), 10), DimensionError);
}

TEST_CASE("value iteration on a single chain sums its edges") {
  CostMatrices C(1, 2, 1, 1);
  C.C_s(0, 0) = 1.0;
  C.C_h(0, 0, 0, 0) = 2.0;
  C.C_l(0, 0, 0) = 3.0;
  const GoalSet goals({{0.0, 0.0}});
  const ValueMatrices V = value_iteration(C, goals);
  CHECK(V.start[0] == 6.0);
  CHECK(V.V_h(0, 0, 0) == 5.0);
  CHECK(V.V_h(0, 1, 0) == 3.0);

  const WaypointTensor Q = tensor_from({{{1.0, 1.0}}, {{2.0, 2.0}}});
  const PlanResult r = trace_path(C, V, Q, goals, Vector{0.0, 0.0});
  CHECK(r.feasible[0]);
  CHECK(r.paths[0] == Path{{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}, {0.0, 0.0}});
}

TEST_CASE("blocked layer gives an infinite start value") {
  CostMatrices C(1, 2, 3, 1);
  std::fill(C.start.begin(), C.start.end(), 1.0);
  std::fill(C.inner.begin(), C.inner.end(), kInf);
  std::fill(C.last.begin(), C.last.end(), 1.0);
  const ValueMatrices V = value_iteration(C, GoalSet(std::vector<Vector>{{0.0}}));
  CHECK(V.start[0] == kInf);
  CHECK(!is_feasible(V.start[0]));
  CHECK(is_feasible(12.4));
}

TEST_CASE("ties go to the lowest index") {
  CostMatrices C(1, 1, 3, 2);
  C.start = {2.0, 1.0, 1.0};
  C.last = {5.0, 5.0, 1.0, 1.0, 1.0, 1.0};
  const GoalSet goals(std::vector<Vector>{{0.0}, {1.0}});
  const ValueMatrices V = value_iteration(C, goals);
  WaypointTensor Q;
  Q.B = 1;
  Q.M = 1;
  Q.N = 3;
  Q.d = 1;
  Q.values = {10.0, 11.0, 12.0};
  const PlanResult r = trace_path(C, V, Q, goals, Vector{0.0});
  CHECK(r.optimal_values[0] == 2.0);
  CHECK(r.waypoint_index[0] == std::vector<std::size_t>{1});
  CHECK(r.goal_index[0] == 0);
}

TEST_CASE("terminal costs steer the goal choice") {
  CostMatrices C(1, 1, 1, 2);
  C.start = {1.0};
  C.last = {1.0, 2.0};
  const GoalSet goals(std::vector<Vector>{{0.0}, {1.0}}, {5.0, 0.0});
  const ValueMatrices V = value_iteration(C, goals);
  CHECK(V.start[0] == 3.0);
  WaypointTensor Q{1, 1, 1, 1, {0.5}};
  CHECK(trace_path(C, V, Q, goals, Vector{0.0}).goal_index[0] == 1);
}

TEST_CASE("value iteration matches brute-force path enumeration") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  std::bernoulli_distribution blocked(0.3);
  const auto draw = [&] { return blocked(rng) ? kInf : u(rng); };
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t M = 4, N = 6, G = 2;
    CostMatrices C(1, M, N, G);
    for (auto& c : C.start) c = draw();
    for (auto& c : C.inner) c = draw();
    for (auto& c : C.last) c = draw();
    const ValueMatrices V = value_iteration(C, GoalSet(std::vector<Vector>{{0.0}, {1.0}}));
    double best = kInf;
    std::vector<std::size_t> idx(M, 0);
    for (std::size_t code = 0; code < 1296; ++code) {
      std::size_t c = code;
      for (auto& v : idx) {
        v = c % N;
        c /= N;
      }
      for (std::size_t g = 0; g < G; ++g) {
        double acc = C.C_l(0, idx[M - 1], g);
        for (std::size_t m = M - 1; m-- > 0;) acc = C.C_h(0, m, idx[m], idx[m + 1]) + acc;
        acc = C.C_s(0, idx[0]) + acc;
        best = std::min(best, acc);
      }
    }
    CHECK(V.start[0] == best);
  }
}

TEST_CASE("one more sweep leaves converged values unchanged") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CostMatrices C(3, 5, 4, 2);
  for (auto* arr : {&C.start, &C.inner, &C.last}) {
    for (auto& c : *arr) c = u(rng) < 0.2 ? kInf : u(rng);
  }
  const GoalSet goals(std::vector<Vector>{{0.0}, {1.0}});
  const ValueMatrices V = value_iteration(C, goals);
  ValueMatrices W = V;
  bellman_sweep(C, W);
  CHECK(W.start == V.start);
  CHECK(W.layers == V.layers);
}

TEST_CASE("plan on an empty world: every path feasible and piecewise straight") {
  const World w = empty_world();
  const PlannerParams p{3, 8, 10, 16, 4};
  const Vector q0{1.0, 1.0};
  const GoalSet goals({{9.0, 9.0}});
  const PlanResult r = plan(w, q0, goals, p);
  CHECK(r.feasible_count() == 16);
  for (std::size_t b = 0; b < 16; ++b) {
    REQUIRE(r.paths[b].size() == p.M + 2);
    double len = 0.0;
    for (std::size_t k = 1; k < r.paths[b].size(); ++k) {
      len += euclidean_distance(r.paths[b][k - 1].data(), r.paths[b][k].data(), 2);
    }
    CHECK(std::abs(len - r.optimal_values[b]) <= 1e-9);
  }
}

TEST_CASE("plan is deterministic and independent of the thread count") {
  std::mt19937_64 rng(1);
  const World w = World::from_grid(gtmp::testing::random_rect_grid(rng, 50, 0.2, 10, 5, 12));
  Vector q0, g;
  REQUIRE(gtmp::testing::random_free_point(w, rng, q0));
  REQUIRE(gtmp::testing::random_free_point(w, rng, g));
  const PlannerParams p{3, 12, 10, 9, 55};
  const PlanResult a = plan(w, q0, GoalSet({g}), p, 1);
  const PlanResult b = plan(w, q0, GoalSet({g}), p, 3);
  CHECK(a == b);
  CHECK(a == plan(w, q0, GoalSet({g}), p));
}

TEST_CASE("ill-posed problems raise InvalidProblem") {
  std::vector<std::uint8_t> occ(100, 0);
  occ[0] = 1;
  occ[99] = 1;
  const World w = World::from_grid(OccupancyGrid(10, 10, occ, 0, 0, 1.0));
  const PlannerParams p{1, 2, 10, 1, 0};
  CHECK_THROWS_AS(plan(w, Vector{0.5, 0.5}, GoalSet({{5.0, 5.0}}), p), InvalidProblem);
  CHECK_THROWS_AS(plan(w, Vector{5.0, 5.0}, GoalSet({{9.5, 9.5}}), p), InvalidProblem);
  CHECK_NOTHROW(plan(w, Vector{5.0, 5.0}, GoalSet({{9.5, 9.5}, {3.0, 3.0}}), p));
  CHECK_THROWS_AS(plan(w, Vector{5.0, 5.0, 1.0}, GoalSet({{3.0, 3.0}}), p), DimensionError);
}

TEST_CASE("rooms map: more waypoints raise the collision-free fraction") {
  const World w = rooms_world();
  const Vector q0{1.0, 1.0};
  const GoalSet goals({{9.0, 9.0}});
  const auto cf = [&](std::size_t N) {
    std::size_t feasible = 0;
    for (std::uint64_t seed = 0; seed < 2; ++seed) feasible += plan(w, q0, goals, {3, N, 60, 200, seed}).feasible_count();
    return feasible;
  };
  const std::size_t low = cf(10), high = cf(50);
  MESSAGE("rooms map feasible paths: N=10 -> " << low << ", N=50 -> " << high);
  CHECK(high > low);
}
