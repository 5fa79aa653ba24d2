#include "gtmp/graph.hpp"

#include <cmath>

#include "gtmp/parallel.hpp"

namespace gtmp {

void PlannerParams::validate() const {
  if (M < 1) throw std::invalid_argument("PlannerParams: M must be >= 1");
  if (N < 1) throw std::invalid_argument("PlannerParams: N must be >= 1");
  if (H < 2) throw std::invalid_argument("PlannerParams: H must be >= 2");
  if (B < 1) throw std::invalid_argument("PlannerParams: B must be >= 1");
}

void UniformProposal::sample(const CounterRng& rng, const ConfigLimits& limits, double* out) const {
  for (std::size_t c = 0; c < limits.dim(); ++c) {
    const double lo = limits.lower()[c];
    const double hi = limits.upper()[c];
    out[c] = lo + rng.uniform(c) * (hi - lo);
    if (out[c] > hi) out[c] = hi;
  }
}

GoalSet::GoalSet(std::vector<Vector> goals, std::vector<double> terminal_costs) {
  if (goals.empty()) throw std::invalid_argument("GoalSet: at least one goal is required");
  d_ = goals.front().size();
  if (d_ == 0) throw DimensionError("GoalSet: goals must have dimension >= 1");
  for (const auto& g : goals) {
    require_dim(g.size(), d_, "GoalSet goal");
    values_.insert(values_.end(), g.begin(), g.end());
  }
  if (terminal_costs.empty()) terminal_costs.assign(goals.size(), 0.0);
  require_dim(terminal_costs.size(), goals.size(), "GoalSet terminal costs");
  for (double c : terminal_costs) {
    if (!(c >= 0.0)) throw std::invalid_argument("GoalSet: terminal costs must be non-negative");
  }
  terminal_costs_ = std::move(terminal_costs);
}

WaypointTensor sample_waypoints(const PlannerParams& params, const ConfigLimits& limits,
                                const std::vector<std::shared_ptr<const Proposal>>& proposals,
                                unsigned threads) {
  params.validate();
  if (!proposals.empty()) require_dim(proposals.size(), params.M, "sample_waypoints proposals");
  static const UniformProposal uniform;

  WaypointTensor Q;
  Q.B = params.B;
  Q.M = params.M;
  Q.N = params.N;
  Q.d = limits.dim();
  Q.values.resize(Q.B * Q.M * Q.N * Q.d);
  parallel_for(
      params.B,
      [&](std::size_t b) {
        const CounterRng slice(batch_seed(params.seed, b));
        for (std::size_t m = 0; m < params.M; ++m) {
          const Proposal& proposal = proposals.empty() ? uniform : *proposals[m];
          const CounterRng layer = slice.fork(m);
          for (std::size_t i = 0; i < params.N; ++i) {
            proposal.sample(layer.fork(i), limits, Q.point(b, m, i));
          }
        }
      },
      threads);
  return Q;
}

std::size_t graph_edge_count(std::size_t M, std::size_t N, std::size_t num_goals) {
  if (M < 1 || N < 1 || num_goals < 1) throw std::invalid_argument("graph_edge_count: inputs must be >= 1");
  return N + (M - 1) * N * N + N * num_goals;
}

}  // namespace gtmp
