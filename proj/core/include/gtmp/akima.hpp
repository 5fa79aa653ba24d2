#pragma once

#include <vector>

#include "gtmp/config_space.hpp"
#include "gtmp/graph.hpp"
#include "gtmp/planner.hpp"

namespace gtmp {

/// Knot parameters t_0 = 0 < ... < t_{M+1} = 1, one per node layer
/// (start, M waypoint layers, goals).
struct KnotSchedule {
  std::vector<double> t;

  static KnotSchedule uniform(std::size_t M);
  double width(std::size_t k) const { return t[k + 1] - t[k]; }
};

/// Edge enumeration of one graph: segment k joins node layer k to k+1.
/// Segment 0 has a single source (q0), segment M targets the goals.
struct EdgeLayout {
  std::size_t M = 0, N = 0, G = 0;

  std::size_t rows(std::size_t k) const { return k == 0 ? 1 : N; }
  std::size_t cols(std::size_t k) const { return k == M ? G : N; }
  std::size_t offset(std::size_t k) const;
  std::size_t edges() const { return offset(M + 1); }
  std::size_t index(std::size_t k, std::size_t i, std::size_t j) const { return offset(k) + i * cols(k) + j; }
};

/// Per-edge chord slopes m_{k,i,j} = (target - source) / (t_{k+1} - t_k).
struct SlopeTensor {
  std::size_t B = 0, d = 0;
  EdgeLayout layout;
  std::vector<double> values;  ///< (B, edges, d)

  const double* slope(std::size_t b, std::size_t k, std::size_t i, std::size_t j) const {
    return values.data() + (b * layout.edges() + layout.index(k, i, j)) * d;
  }
};

/// Shared spline slope s_k per node layer, shape (B, M+2, d).
struct LayerSlopes {
  std::size_t B = 0, M = 0, d = 0;
  std::vector<double> values;

  const double* at(std::size_t b, std::size_t k) const { return values.data() + (b * (M + 2) + k) * d; }
  double* at(std::size_t b, std::size_t k) { return values.data() + (b * (M + 2) + k) * d; }
};

/// One cubic f(t) = d (t-t0)^3 + c (t-t0)^2 + b (t-t0) + a on [t0, t1].
struct EdgeSpline {
  Vector a, b, c, d;
  double t0 = 0.0, t1 = 1.0;

  /// Value (order 0) or first derivative (order 1) at t in [t0, t1].
  Vector evaluate(double t, int derivative_order = 0) const;
};

/// Cubic coefficients for every edge, each array shaped like SlopeTensor.
struct SplineCoefficients {
  std::size_t B = 0, d = 0;
  EdgeLayout layout;
  KnotSchedule knots;
  std::vector<double> a, b, c, d_;

  EdgeSpline edge(std::size_t batch, std::size_t k, std::size_t i, std::size_t j) const;
};

/// Source / target node coordinates of an edge.
const double* edge_source(VectorView q0, const WaypointTensor& Q, std::size_t b, std::size_t k, std::size_t i);
const double* edge_target(const WaypointTensor& Q, const GoalSet& goals, std::size_t b, std::size_t k,
                          std::size_t j);

SlopeTensor chord_slopes(VectorView q0, const WaypointTensor& Q, const GoalSet& goals,
                         const KnotSchedule& knots);

/// Layer-averaged modified-Akima slopes. End layers follow the classic
/// Akima end rules on layer-mean chord slopes; interior layers blend per edge
/// with component-wise weights and average over the N^2 edge pairs.
LayerSlopes layer_slopes(const SlopeTensor& slopes);

SplineCoefficients spline_coefficients(VectorView q0, const WaypointTensor& Q, const GoalSet& goals,
                                       const SlopeTensor& slopes, const LayerSlopes& layer,
                                       const KnotSchedule& knots);

/// Midpoint-rule approximation of the integral of (c_coll(f) + 1) * |f'|
/// with H parameter probes; +inf if any probe collides.
double akima_edge_cost(const World& world, const EdgeSpline& spline, std::size_t H);

struct AkimaPlanResult {
  PlanResult plan;
  KnotSchedule knots;
  std::vector<std::vector<EdgeSpline>> splines;  ///< per batch entry, M+1 traced edges
};

AkimaPlanResult plan_akima(const World& world, VectorView q0, const GoalSet& goals,
                           const PlannerParams& params, unsigned threads = 0);

/// Samples a traced spline path at `per_edge` points per edge (knots included).
Path sample_spline_path(const std::vector<EdgeSpline>& splines, std::size_t per_edge);

}  // namespace gtmp
