#include "gtmp/akima.hpp"

#include <array>
#include <cmath>

#include "gtmp/parallel.hpp"

namespace gtmp {

namespace {

constexpr double kWeightFloor = 1e-12;

// f and f' of one cubic at u = t - t0, written component-wise.
void cubic_at(const double* a, const double* b, const double* c, const double* d, std::size_t dim, double u,
              double* value, double* deriv) {
  for (std::size_t k = 0; k < dim; ++k) {
    if (value != nullptr) value[k] = ((d[k] * u + c[k]) * u + b[k]) * u + a[k];
    if (deriv != nullptr) deriv[k] = (3.0 * d[k] * u + 2.0 * c[k]) * u + b[k];
  }
}

double spline_cost(const World& world, const double* a, const double* b, const double* c, const double* d,
                   std::size_t dim, double width, std::size_t H) {
  std::array<double, 16> value_buf{};
  std::array<double, 16> deriv_buf{};
  std::vector<double> value_big, deriv_big;
  double* value = value_buf.data();
  double* deriv = deriv_buf.data();
  if (dim > value_buf.size()) {
    value_big.resize(dim);
    deriv_big.resize(dim);
    value = value_big.data();
    deriv = deriv_big.data();
  }
  const double dt = width / static_cast<double>(H);
  double total = 0.0;
  for (std::size_t k = 0; k < H; ++k) {
    const double u = (static_cast<double>(k) + 0.5) * dt;
    cubic_at(a, b, c, d, dim, u, value, deriv);
    if (!world.is_free(value)) return kInf;
    double speed = 0.0;
    for (std::size_t i = 0; i < dim; ++i) speed += deriv[i] * deriv[i];
    total += std::sqrt(speed) * dt;
  }
  return total;
}

void edge_coefficients(const double* source, const double* chord, const double* s0, const double* s1,
                       std::size_t dim, double width, double* a, double* b, double* c, double* d) {
  for (std::size_t k = 0; k < dim; ++k) {
    a[k] = source[k];
    b[k] = s0[k];
    c[k] = (3.0 * chord[k] - 2.0 * s0[k] - s1[k]) / width;
    d[k] = (s0[k] + s1[k] - 2.0 * chord[k]) / (width * width);
  }
}

}  // namespace

KnotSchedule KnotSchedule::uniform(std::size_t M) {
  KnotSchedule knots;
  knots.t.resize(M + 2);
  for (std::size_t k = 0; k <= M + 1; ++k) knots.t[k] = static_cast<double>(k) / static_cast<double>(M + 1);
  return knots;
}

std::size_t EdgeLayout::offset(std::size_t k) const {
  if (k == 0) return 0;
  // segment 0: N edges; segments 1..M-1: N*N; segment M: N*G
  std::size_t off = N;
  const std::size_t inner = std::min(k, M) - 1;
  off += inner * N * N;
  if (k > M) off += N * G;
  return off;
}

Vector EdgeSpline::evaluate(double t, int derivative_order) const {
  if (!(t >= t0 && t <= t1)) throw std::out_of_range("EdgeSpline::evaluate: t outside the edge's knot interval");
  if (derivative_order != 0 && derivative_order != 1) {
    throw std::invalid_argument("EdgeSpline::evaluate: derivative order must be 0 or 1");
  }
  Vector out(a.size());
  const double u = t - t0;
  if (derivative_order == 0) {
    cubic_at(a.data(), b.data(), c.data(), d.data(), a.size(), u, out.data(), nullptr);
  } else {
    cubic_at(a.data(), b.data(), c.data(), d.data(), a.size(), u, nullptr, out.data());
  }
  return out;
}

EdgeSpline SplineCoefficients::edge(std::size_t batch, std::size_t k, std::size_t i, std::size_t j) const {
  const std::size_t base = (batch * layout.edges() + layout.index(k, i, j)) * d;
  const auto slice = [&](const std::vector<double>& v) {
    return Vector(v.begin() + static_cast<std::ptrdiff_t>(base), v.begin() + static_cast<std::ptrdiff_t>(base + d));
  };
  return EdgeSpline{slice(a), slice(b), slice(c), slice(d_), knots.t[k], knots.t[k + 1]};
}

const double* edge_source(VectorView q0, const WaypointTensor& Q, std::size_t b, std::size_t k, std::size_t i) {
  return k == 0 ? q0.data() : Q.point(b, k - 1, i);
}

const double* edge_target(const WaypointTensor& Q, const GoalSet& goals, std::size_t b, std::size_t k,
                          std::size_t j) {
  return k == Q.M ? goals.goal(j) : Q.point(b, k, j);
}

SlopeTensor chord_slopes(VectorView q0, const WaypointTensor& Q, const GoalSet& goals, const KnotSchedule& knots) {
  require_dim(q0.size(), Q.d, "chord_slopes start");
  require_dim(goals.dim(), Q.d, "chord_slopes goals");
  require_dim(knots.t.size(), Q.M + 2, "chord_slopes knots");
  SlopeTensor S;
  S.B = Q.B;
  S.d = Q.d;
  S.layout = EdgeLayout{Q.M, Q.N, goals.size()};
  S.values.resize(S.B * S.layout.edges() * S.d);
  for (std::size_t b = 0; b < Q.B; ++b) {
    for (std::size_t k = 0; k <= Q.M; ++k) {
      const double width = knots.width(k);
      for (std::size_t i = 0; i < S.layout.rows(k); ++i) {
        const double* src = edge_source(q0, Q, b, k, i);
        for (std::size_t j = 0; j < S.layout.cols(k); ++j) {
          const double* dst = edge_target(Q, goals, b, k, j);
          double* out = S.values.data() + (b * S.layout.edges() + S.layout.index(k, i, j)) * S.d;
          for (std::size_t c = 0; c < S.d; ++c) out[c] = (dst[c] - src[c]) / width;
        }
      }
    }
  }
  return S;
}

LayerSlopes layer_slopes(const SlopeTensor& slopes) {
  const EdgeLayout& L = slopes.layout;
  const std::size_t M = L.M, d = slopes.d;
  if (M < 1) throw std::invalid_argument("layer_slopes: M must be >= 1");
  LayerSlopes S;
  S.B = slopes.B;
  S.M = M;
  S.d = d;
  S.values.assign(S.B * (M + 2) * d, 0.0);

  std::vector<double> mean((M + 1) * d);
  for (std::size_t b = 0; b < slopes.B; ++b) {
    // layer-mean chord slope of every segment
    std::fill(mean.begin(), mean.end(), 0.0);
    for (std::size_t k = 0; k <= M; ++k) {
      double* mk = &mean[k * d];
      const std::size_t count = L.rows(k) * L.cols(k);
      for (std::size_t i = 0; i < L.rows(k); ++i) {
        for (std::size_t j = 0; j < L.cols(k); ++j) {
          const double* m = slopes.slope(b, k, i, j);
          for (std::size_t c = 0; c < d; ++c) mk[c] += m[c];
        }
      }
      for (std::size_t c = 0; c < d; ++c) mk[c] /= static_cast<double>(count);
    }
    const auto mbar = [&](std::size_t k) { return &mean[k * d]; };

    for (std::size_t c = 0; c < d; ++c) {
      S.at(b, 0)[c] = mbar(0)[c];
      S.at(b, 1)[c] = 0.5 * (mbar(0)[c] + mbar(1)[c]);
      S.at(b, M)[c] = 0.5 * (mbar(M)[c] + mbar(M - 1)[c]);
      S.at(b, M + 1)[c] = mbar(M)[c];
    }

    // Interior node layers 2..M-1: both adjoining segments are N x N.
    for (std::size_t m = 2; m + 1 <= M; ++m) {
      double* out = S.at(b, m);
      const double* ahead = mbar(m + 1);
      const double* behind = mbar(m - 2);
      for (std::size_t i = 0; i < L.N; ++i) {
        for (std::size_t j = 0; j < L.N; ++j) {
          const double* prev = slopes.slope(b, m - 1, i, j);
          const double* cur = slopes.slope(b, m, i, j);
          for (std::size_t c = 0; c < d; ++c) {
            const double w_cur = std::abs(ahead[c] - cur[c]) + 0.5 * std::abs(ahead[c] + cur[c]);
            const double w_prev = std::abs(prev[c] - behind[c]) + 0.5 * std::abs(prev[c] + behind[c]);
            const double denom = w_cur + w_prev;
            out[c] += denom < kWeightFloor ? 0.5 * (prev[c] + cur[c]) : (w_cur * prev[c] + w_prev * cur[c]) / denom;
          }
        }
      }
      for (std::size_t c = 0; c < d; ++c) out[c] /= static_cast<double>(L.N * L.N);
    }
  }
  return S;
}

SplineCoefficients spline_coefficients(VectorView q0, const WaypointTensor& Q, const GoalSet& /*goals*/,
                                       const SlopeTensor& slopes, const LayerSlopes& layer,
                                       const KnotSchedule& knots) {
  SplineCoefficients out;
  out.B = slopes.B;
  out.d = slopes.d;
  out.layout = slopes.layout;
  out.knots = knots;
  const std::size_t total = out.B * out.layout.edges() * out.d;
  out.a.resize(total);
  out.b.resize(total);
  out.c.resize(total);
  out.d_.resize(total);
  for (std::size_t b = 0; b < out.B; ++b) {
    for (std::size_t k = 0; k <= out.layout.M; ++k) {
      for (std::size_t i = 0; i < out.layout.rows(k); ++i) {
        for (std::size_t j = 0; j < out.layout.cols(k); ++j) {
          const std::size_t base = (b * out.layout.edges() + out.layout.index(k, i, j)) * out.d;
          edge_coefficients(edge_source(q0, Q, b, k, i), slopes.slope(b, k, i, j), layer.at(b, k), layer.at(b, k + 1),
                            out.d, knots.width(k), &out.a[base], &out.b[base], &out.c[base], &out.d_[base]);
        }
      }
    }
  }
  return out;
}

double akima_edge_cost(const World& world, const EdgeSpline& spline, std::size_t H) {
  if (H < 2) throw std::invalid_argument("akima_edge_cost: H must be at least 2");
  require_dim(spline.a.size(), world.dim(), "akima_edge_cost spline");
  return spline_cost(world, spline.a.data(), spline.b.data(), spline.c.data(), spline.d.data(), world.dim(),
                     spline.t1 - spline.t0, H);
}

AkimaPlanResult plan_akima(const World& world, VectorView q0, const GoalSet& goals, const PlannerParams& params,
                           unsigned threads) {
  params.validate();
  check_problem(world, q0, goals);
  const WaypointTensor Q = sample_waypoints(params, world.limits(), {}, threads);
  const KnotSchedule knots = KnotSchedule::uniform(params.M);
  const SlopeTensor slopes = chord_slopes(q0, Q, goals, knots);
  const LayerSlopes layer = layer_slopes(slopes);
  const std::size_t dim = Q.d;
  const EdgeLayout& L = slopes.layout;

  CostMatrices C(Q.B, Q.M, Q.N, goals.size());
  const std::size_t segments = Q.M + 1;
  parallel_for(
      Q.B * segments,
      [&](std::size_t item) {
        const std::size_t b = item / segments;
        const std::size_t k = item % segments;
        std::vector<double> coeff(4 * dim);
        double* a = coeff.data();
        double* bb = a + dim;
        double* c = bb + dim;
        double* d = c + dim;
        for (std::size_t i = 0; i < L.rows(k); ++i) {
          for (std::size_t j = 0; j < L.cols(k); ++j) {
            edge_coefficients(edge_source(q0, Q, b, k, i), slopes.slope(b, k, i, j), layer.at(b, k), layer.at(b, k + 1),
                              dim, knots.width(k), a, bb, c, d);
            const double cost = spline_cost(world, a, bb, c, d, dim, knots.width(k), params.H);
            if (k == 0) {
              C.C_s(b, j) = cost;
            } else if (k == Q.M) {
              C.C_l(b, i, j) = cost;
            } else {
              C.C_h(b, k - 1, i, j) = cost;
            }
          }
        }
      },
      threads);

  const ValueMatrices V = value_iteration(C, goals);
  AkimaPlanResult result;
  result.plan = trace_path(C, V, Q, goals, q0);
  result.knots = knots;
  result.splines.resize(Q.B);
  for (std::size_t b = 0; b < Q.B; ++b) {
    const auto& idx = result.plan.waypoint_index[b];
    auto& edges = result.splines[b];
    edges.reserve(Q.M + 1);
    for (std::size_t k = 0; k <= Q.M; ++k) {
      const std::size_t i = k == 0 ? 0 : idx[k - 1];
      const std::size_t j = k == Q.M ? result.plan.goal_index[b] : idx[k];
      EdgeSpline s{Vector(dim), Vector(dim), Vector(dim), Vector(dim), knots.t[k], knots.t[k + 1]};
      edge_coefficients(edge_source(q0, Q, b, k, i), slopes.slope(b, k, i, j), layer.at(b, k), layer.at(b, k + 1), dim,
                        knots.width(k), s.a.data(), s.b.data(), s.c.data(), s.d.data());
      edges.push_back(std::move(s));
    }
  }
  return result;
}

Path sample_spline_path(const std::vector<EdgeSpline>& splines, std::size_t per_edge) {
  if (per_edge < 1) throw std::invalid_argument("sample_spline_path: per_edge must be >= 1");
  Path out;
  for (std::size_t e = 0; e < splines.size(); ++e) {
    const EdgeSpline& s = splines[e];
    for (std::size_t k = 0; k < per_edge; ++k) {
      const double t = s.t0 + (s.t1 - s.t0) * static_cast<double>(k) / static_cast<double>(per_edge);
      out.push_back(s.evaluate(t));
    }
  }
  if (!splines.empty()) out.push_back(splines.back().evaluate(splines.back().t1));
  return out;
}

}  // namespace gtmp
