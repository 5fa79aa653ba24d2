#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gtmp/config_space.hpp"

namespace gtmp {

/// Shape and seed of a batched multipartite graph.
struct PlannerParams {
  std::size_t M = 1;   ///< layers
  std::size_t N = 1;   ///< waypoints per layer
  std::size_t H = 10;  ///< probes per edge
  std::size_t B = 1;   ///< batch size
  std::uint64_t seed = 0;

  void validate() const;
};

/// Seed used for batch slice b. batch_seed(s, 0) == s, so a B = 1 plan with
/// seed batch_seed(s, b) reproduces slice b of a batched plan with seed s.
constexpr std::uint64_t batch_seed(std::uint64_t seed, std::size_t b) {
  return seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(b);
}

/// Stateless counter-based generator: every draw is a pure function of its key.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  CounterRng fork(std::uint64_t index) const { return CounterRng(mix(key_ ^ mix(index + 0x632BE59BD9B4E019ULL))); }

  /// Uniform in [0, 1) for counter value i.
  double uniform(std::uint64_t i) const {
    return static_cast<double>(mix(key_ + 0x9E3779B97F4A7C15ULL * (i + 1)) >> 11) * 0x1.0p-53;
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t key_;
};

/// Per-layer proposal distribution p_m. Writes one waypoint to `out`.
class Proposal {
public:
  virtual ~Proposal() = default;
  virtual void sample(const CounterRng& rng, const ConfigLimits& limits, double* out) const = 0;
};

class UniformProposal final : public Proposal {
public:
  void sample(const CounterRng& rng, const ConfigLimits& limits, double* out) const override;
};

/// Layer waypoints Q, shape (B, M, N, d), row-major.
struct WaypointTensor {
  std::size_t B = 0, M = 0, N = 0, d = 0;
  std::vector<double> values;

  const double* point(std::size_t b, std::size_t m, std::size_t i) const {
    return values.data() + ((b * M + m) * N + i) * d;
  }
  double* point(std::size_t b, std::size_t m, std::size_t i) {
    return values.data() + ((b * M + m) * N + i) * d;
  }
};

/// Terminal set G with terminal costs c_g.
class GoalSet {
public:
  /// Terminal costs default to zero.
  explicit GoalSet(std::vector<Vector> goals, std::vector<double> terminal_costs = {});

  std::size_t size() const { return terminal_costs_.size(); }
  std::size_t dim() const { return d_; }
  const double* goal(std::size_t g) const { return values_.data() + g * d_; }
  Vector goal_vector(std::size_t g) const { return Vector(goal(g), goal(g) + d_); }
  const std::vector<double>& terminal_costs() const { return terminal_costs_; }

private:
  std::size_t d_ = 0;
  std::vector<double> values_;
  std::vector<double> terminal_costs_;
};

/// Samples B x M x N waypoints. Waypoint (b, m, i) depends only on
/// (batch_seed(seed, b), m, i). `proposals`, when non-empty, holds one
/// sampler per layer; otherwise every layer is uniform over the limits.
WaypointTensor sample_waypoints(const PlannerParams& params, const ConfigLimits& limits,
                                const std::vector<std::shared_ptr<const Proposal>>& proposals = {},
                                unsigned threads = 0);

/// Edge count of the complete (M+2)-partite directed graph.
std::size_t graph_edge_count(std::size_t M, std::size_t N, std::size_t num_goals);

}  // namespace gtmp
