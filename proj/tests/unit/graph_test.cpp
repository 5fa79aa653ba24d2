#include <set>
#include <tuple>

#include "doctest.h"
#include "gtmp/graph.hpp"

using namespace gtmp;

namespace {

// Enumerates the directed edges of the layered graph node by node.
std::size_t enumerate_edges(std::size_t M, std::size_t N, std::size_t G) {
  // node: (layer, index); layer 0 = start, 1..M waypoint layers, M+1 goals
  std::vector<std::pair<std::size_t, std::size_t>> nodes{{0, 0}};
  for (std::size_t m = 1; m <= M; ++m) {
    for (std::size_t i = 0; i < N; ++i) nodes.emplace_back(m, i);
  }
  for (std::size_t g = 0; g < G; ++g) nodes.emplace_back(M + 1, g);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> edges;
  for (const auto& [la, ia] : nodes) {
    for (const auto& [lb, ib] : nodes) {
      if (lb == la + 1) edges.emplace(la, ia, lb, ib);
    }
  }
  return edges.size();
}

class ConstantProposal final : public Proposal {
public:
  explicit ConstantProposal(double v) : v_(v) {}
  void sample(const CounterRng&, const ConfigLimits& limits, double* out) const override {
    for (std::size_t c = 0; c < limits.dim(); ++c) out[c] = v_;
  }

private:
  double v_;
};

}  // namespace

TEST_CASE("graph_edge_count examples") {
  CHECK(graph_edge_count(1, 1, 1) == 2);
  CHECK(graph_edge_count(2, 3, 1) == 15);
  CHECK(graph_edge_count(3, 2, 2) == 14);
  CHECK(graph_edge_count(3, 2, 2) == enumerate_edges(3, 2, 2));
}

TEST_CASE("graph_edge_count agrees with explicit enumeration") {
  for (std::size_t M = 1; M <= 5; ++M) {
    for (std::size_t N = 1; N <= 5; ++N) {
      for (std::size_t G = 1; G <= 3; ++G) CHECK(graph_edge_count(M, N, G) == enumerate_edges(M, N, G));
    }
  }
  CHECK_THROWS_AS(graph_edge_count(0, 1, 1), std::invalid_argument);
}

TEST_CASE("sampled waypoints stay inside the limits") {
  const ConfigLimits lim({0.0, 0.0}, {1.0, 1.0});
  const WaypointTensor Q = sample_waypoints({3, 20, 10, 4, 99}, lim);
  CHECK(Q.values.size() == 4 * 3 * 20 * 2);
  for (std::size_t b = 0; b < Q.B; ++b) {
    for (std::size_t m = 0; m < Q.M; ++m) {
      for (std::size_t i = 0; i < Q.N; ++i) CHECK(lim.contains(Q.point(b, m, i)));
    }
  }
}

TEST_CASE("sampling is deterministic in the seed and thread count") {
  const ConfigLimits lim({-2.0, 0.0, 5.0}, {2.0, 1.0, 6.0});
  const PlannerParams p{4, 7, 10, 5, 7};
  const WaypointTensor a = sample_waypoints(p, lim, {}, 1);
  const WaypointTensor b = sample_waypoints(p, lim, {}, 4);
  CHECK(a.values == b.values);
  PlannerParams other = p;
  other.seed = 8;
  CHECK(sample_waypoints(other, lim).values != a.values);
}

TEST_CASE("batch slices differ across many seeds") {
  const ConfigLimits lim({0.0, 0.0}, {1.0, 1.0});
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const WaypointTensor Q = sample_waypoints({2, 3, 10, 2, seed}, lim);
    const std::size_t slice = Q.M * Q.N * Q.d;
    const std::vector<double> s0(Q.values.begin(), Q.values.begin() + static_cast<std::ptrdiff_t>(slice));
    const std::vector<double> s1(Q.values.begin() + static_cast<std::ptrdiff_t>(slice), Q.values.end());
    CHECK(s0 != s1);
  }
}

TEST_CASE("slice b equals a single-slice draw with batch_seed") {
  const ConfigLimits lim({0.0, 0.0}, {3.0, 3.0});
  const WaypointTensor full = sample_waypoints({2, 5, 10, 6, 1234}, lim);
  for (std::size_t b = 0; b < 6; ++b) {
    const WaypointTensor one = sample_waypoints({2, 5, 10, 1, batch_seed(1234, b)}, lim);
    for (std::size_t m = 0; m < 2; ++m) {
      for (std::size_t i = 0; i < 5; ++i) {
        CHECK(Vector(one.point(0, m, i), one.point(0, m, i) + 2) == Vector(full.point(b, m, i), full.point(b, m, i) + 2));
      }
    }
  }
  CHECK(batch_seed(77, 0) == 77);
}

TEST_CASE("uniform draws look uniform") {
  const CounterRng rng(42);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(static_cast<std::uint64_t>(i));
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("per-layer proposals are honoured") {
  const ConfigLimits lim({0.0, 0.0}, {1.0, 1.0});
  std::vector<std::shared_ptr<const Proposal>> props{std::make_shared<ConstantProposal>(0.25),
                                                      std::make_shared<UniformProposal>()};
  const WaypointTensor Q = sample_waypoints({2, 4, 10, 1, 0}, lim, props);
  for (std::size_t i = 0; i < 4; ++i) CHECK(Q.point(0, 0, i)[0] == 0.25);
  CHECK(Q.point(0, 1, 0)[0] != 0.25);
  props.pop_back();
  CHECK_THROWS_AS(sample_waypoints({2, 4, 10, 1, 0}, lim, props), DimensionError);
}

TEST_CASE("invalid parameters and goal sets") {
  CHECK_THROWS_AS(PlannerParams({0, 1, 10, 1, 0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(PlannerParams({1, 0, 10, 1, 0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(PlannerParams({1, 1, 1, 1, 0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(PlannerParams({1, 1, 10, 0, 0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GoalSet({}), std::invalid_argument);
  CHECK_THROWS_AS(GoalSet({{1.0, 2.0}, {1.0}}), DimensionError);
  CHECK_THROWS_AS(GoalSet({{1.0}}, {-1.0}), std::invalid_argument);
  const GoalSet g({{1.0, 2.0}, {3.0, 4.0}}, {0.5, 1.5});
  CHECK(g.size() == 2);
  CHECK(g.goal_vector(1) == Vector{3.0, 4.0});
  CHECK(g.terminal_costs()[1] == 1.5);
}
