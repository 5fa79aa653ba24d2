#include "gtmp/oracle.hpp"

#include <functional>
#include <queue>
#include <utility>

namespace gtmp {

namespace {

struct Edge {
  std::size_t from;
  double cost;
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

std::vector<OracleResult> dijkstra_oracle(const CostMatrices& C, const GoalSet& goals) {
  require_dim(goals.size(), C.G, "dijkstra_oracle goals");
  const std::size_t M = C.M, N = C.N, G = C.G;
  // Node ids: 0 = start, 1 + m*N + i = waypoint (m, i), 1 + M*N + g = goal g.
  const std::size_t num_nodes = 1 + M * N + G;
  const auto layer_node = [N](std::size_t m, std::size_t i) { return 1 + m * N + i; };
  const auto goal_node = [M, N](std::size_t g) { return 1 + M * N + g; };
  // Layer-local index of a node, used for tie-breaking.
  const auto local_index = [&](std::size_t node) {
    if (node >= goal_node(0)) return node - goal_node(0);
    return (node - 1) % N;
  };

  std::vector<OracleResult> results(C.B);
  for (std::size_t b = 0; b < C.B; ++b) {
    std::vector<std::vector<Edge>> incoming(num_nodes);
    for (std::size_t i = 0; i < N; ++i) incoming[layer_node(0, i)].push_back({0, C.C_s(b, i)});
    for (std::size_t m = 0; m + 1 < M; ++m) {
      for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
          incoming[layer_node(m + 1, j)].push_back({layer_node(m, i), C.C_h(b, m, i, j)});
        }
      }
    }
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t g = 0; g < G; ++g) incoming[goal_node(g)].push_back({layer_node(M - 1, i), C.C_l(b, i, g)});
    }

    std::vector<double> dist(num_nodes, kInf);
    std::vector<std::size_t> succ(num_nodes, kNone);
    std::vector<bool> settled(num_nodes, false);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    for (std::size_t g = 0; g < G; ++g) {
      dist[goal_node(g)] = goals.terminal_costs()[g];
      open.emplace(dist[goal_node(g)], goal_node(g));
    }
    while (!open.empty()) {
      const auto [d, v] = open.top();
      open.pop();
      if (settled[v] || d > dist[v]) continue;
      settled[v] = true;
      for (const Edge& e : incoming[v]) {
        const double candidate = e.cost + dist[v];
        if (!(candidate < kInf)) continue;
        if (candidate < dist[e.from]) {
          dist[e.from] = candidate;
          succ[e.from] = v;
          open.emplace(candidate, e.from);
        } else if (candidate == dist[e.from] && local_index(v) < local_index(succ[e.from])) {
          succ[e.from] = v;
        }
      }
    }

    OracleResult& r = results[b];
    r.cost = dist[0];
    r.waypoint_index.resize(M);
    std::size_t node = 0;
    for (std::size_t m = 0; m < M; ++m) {
      node = succ[node] == kNone ? layer_node(m, 0) : succ[node];
      r.waypoint_index[m] = local_index(node);
    }
    node = succ[node] == kNone ? goal_node(0) : succ[node];
    r.goal_index = local_index(node);
  }
  return results;
}

}  // namespace gtmp
