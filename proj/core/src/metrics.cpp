#include "gtmp/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "gtmp/config_space.hpp"
#include "gtmp/parallel.hpp"

namespace gtmp {

namespace {

void check_path(const EmpiricalPath& path, std::size_t min_points, const char* what) {
  if (path.size() < min_points) {
    throw std::invalid_argument(std::string(what) + ": path needs at least " + std::to_string(min_points) + " points");
  }
  for (const auto& q : path) require_dim(q.size(), path.front().size(), what);
}

double log_sum_exp(const std::vector<double>& x) {
  const double hi = *std::max_element(x.begin(), x.end());
  if (!std::isfinite(hi)) return hi;
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - hi);
  return hi + std::log(sum);
}

constexpr std::size_t kAnnealSweeps = 20;
constexpr std::size_t kPlainSweeps = 10;

}  // namespace

double total_variation(const EmpiricalPath& path) {
  check_path(path, 2, "total_variation");
  double length = 0.0;
  for (std::size_t k = 1; k < path.size(); ++k) {
    length += euclidean_distance(path[k - 1].data(), path[k].data(), path[k].size());
  }
  return length;
}

double min_cosine_similarity(const EmpiricalPath& path) {
  check_path(path, 3, "min_cosine_similarity");
  const std::size_t d = path.front().size();
  std::vector<Vector> directions;
  for (std::size_t k = 1; k < path.size(); ++k) {
    Vector seg(d);
    double norm = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      seg[c] = path[k][c] - path[k - 1][c];
      norm += seg[c] * seg[c];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    for (double& v : seg) v /= norm;
    directions.push_back(std::move(seg));
  }
  if (directions.empty()) throw std::invalid_argument("min_cosine_similarity: every segment has zero length");
  double worst = 1.0;
  for (std::size_t k = 1; k < directions.size(); ++k) {
    double dot = 0.0;
    for (std::size_t c = 0; c < d; ++c) dot += directions[k - 1][c] * directions[k][c];
    worst = std::min(worst, std::clamp(dot, -1.0, 1.0));
  }
  return worst;
}

double sinkhorn_distance(const EmpiricalPath& p1, const EmpiricalPath& p2, double lambda,
                         const SinkhornOptions& options) {
  check_path(p1, 1, "sinkhorn_distance");
  check_path(p2, 1, "sinkhorn_distance");
  require_dim(p2.front().size(), p1.front().size(), "sinkhorn_distance");
  if (!(lambda > 0.0)) throw std::invalid_argument("sinkhorn_distance: lambda must be positive");

  // Identical point multisets are at zero transport distance; the entropic
  // plan would otherwise smear mass onto nearby off-diagonal pairs.
  if (p1.size() == p2.size()) {
    EmpiricalPath s1 = p1, s2 = p2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 == s2) return 0.0;
  }

  // Canonical argument order: swapping inputs runs the identical computation.
  const bool swap = std::lexicographical_compare(p2.begin(), p2.end(), p1.begin(), p1.end());
  const EmpiricalPath& x = swap ? p2 : p1;
  const EmpiricalPath& y = swap ? p1 : p2;
  const std::size_t n = x.size(), m = y.size(), d = x.front().size();

  std::vector<double> cost(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double diff = x[i][c] - y[j][c];
        s += diff * diff;
      }
      cost[i * m + j] = s;
    }
  }

  const double log_a = -std::log(static_cast<double>(n));
  const double log_b = -std::log(static_cast<double>(m));
  const double wa = 1.0 / static_cast<double>(n), wb = 1.0 / static_cast<double>(m);
  std::vector<double> f(n, 0.0), g(m, 0.0), scratch(std::max(n, m));
  const auto plan_entry = [&](std::size_t i, std::size_t j, double eps) {
    return std::exp((f[i] + g[j] - cost[i * m + j]) / eps);
  };

  // One pair of log-domain updates at regularization eps; returns the row-marginal
  // L1 residual (columns are exact after the g-update).
  const auto sweep = [&](double eps) {
    scratch.resize(m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) scratch[j] = (g[j] - cost[i * m + j]) / eps;
      f[i] = eps * (log_a - log_sum_exp(scratch));
    }
    scratch.resize(n);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < n; ++i) scratch[i] = (f[i] - cost[i * m + j]) / eps;
      g[j] = eps * (log_b - log_sum_exp(scratch));
    }
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < m; ++j) row += plan_entry(i, j, eps);
      r += std::abs(row - wa);
    }
    return r;
  };

  const auto dual = [&](double eps) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += wa * f[i];
    for (std::size_t j = 0; j < m; ++j) v += wb * g[j];
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) mass += plan_entry(i, j, eps);
    }
    return v - eps * mass;
  };

  // Newton step on the dual with f eliminated (Schur complement in g, last g
  // pinned to fix the additive gauge) and a backtracking line search. Near-tied
  // couplings make plain sweeps converge sublinearly; this restores fast convergence
  // to the same fixed point.
  const auto newton = [&](double eps) {
    if (m < 2) return;
    std::vector<double> P(n * m), r(n, 0.0), c(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        P[i * m + j] = plan_entry(i, j, eps);
        r[i] += P[i * m + j];
        c[j] += P[i * m + j];
      }
    }
    for (double v : r) {
      if (!(v > 0.0)) return;
    }
    const std::size_t k = m - 1;
    std::vector<double> S(k * k, 0.0), rhs(k);
    for (std::size_t j = 0; j < k; ++j) {
      rhs[j] = eps * (wb - c[j]);
      for (std::size_t i = 0; i < n; ++i) rhs[j] -= P[i * m + j] * eps * (wa - r[i]) / r[i];
      S[j * k + j] = c[j];
      for (std::size_t l = 0; l <= j; ++l) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += P[i * m + j] * P[i * m + l] / r[i];
        S[j * k + l] -= acc;
        if (l != j) S[l * k + j] = S[j * k + l];
      }
    }
    // Cholesky with a small ridge against near-disconnected supports.
    double ridge = 0.0;
    for (std::size_t j = 0; j < k; ++j) ridge = std::max(ridge, S[j * k + j]);
    ridge *= 1e-13;
    for (std::size_t j = 0; j < k; ++j) S[j * k + j] += ridge;
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < j; ++l) S[j * k + j] -= S[j * k + l] * S[j * k + l];
      if (!(S[j * k + j] > 0.0)) return;
      S[j * k + j] = std::sqrt(S[j * k + j]);
      for (std::size_t t = j + 1; t < k; ++t) {
        for (std::size_t l = 0; l < j; ++l) S[t * k + j] -= S[t * k + l] * S[j * k + l];
        S[t * k + j] /= S[j * k + j];
      }
    }
    std::vector<double> dg(m, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      double v = rhs[j];
      for (std::size_t l = 0; l < j; ++l) v -= S[j * k + l] * dg[l];
      dg[j] = v / S[j * k + j];
    }
    for (std::size_t j = k; j-- > 0;) {
      double v = dg[j];
      for (std::size_t l = j + 1; l < k; ++l) v -= S[l * k + j] * dg[l];
      dg[j] = v / S[j * k + j];
    }
    std::vector<double> df(n);
    for (std::size_t i = 0; i < n; ++i) {
      double v = eps * (wa - r[i]);
      for (std::size_t j = 0; j < m; ++j) v -= P[i * m + j] * dg[j];
      df[i] = v / r[i];
    }
    const std::vector<double> f0 = f, g0 = g;
    const double base = dual(eps);
    for (double step = 1.0; step > 1e-4; step *= 0.5) {
      for (std::size_t i = 0; i < n; ++i) f[i] = f0[i] + step * df[i];
      for (std::size_t j = 0; j < m; ++j) g[j] = g0[j] + step * dg[j];
      if (dual(eps) > base) return;
    }
    f = f0;
    g = g0;
  };

  // Epsilon scaling: warm-start the potentials on a geometric schedule from the
  // cost scale down to lambda, so the final stage starts near its fixed point.
  const double scale = *std::max_element(cost.begin(), cost.end());
  for (double eps = scale; eps > 2.0 * lambda; eps *= 0.5) {
    for (std::size_t k = 0; k < kAnnealSweeps; ++k) {
      if (sweep(eps) < options.tolerance) break;
    }
  }

  double residual = kInf;
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    if (iter >= kPlainSweeps) newton(lambda);
    residual = sweep(lambda);
    if (residual < options.tolerance) {
      double transport = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) transport += plan_entry(i, j, lambda) * cost[i * m + j];
      }
      return transport;
    }
  }
  throw SinkhornNotConverged("sinkhorn_distance: no convergence after " + std::to_string(options.max_iterations) +
                                 " iterations (marginal residual " + std::to_string(residual) + ")",
                             residual);
}

double path_diversity(const std::vector<EmpiricalPath>& batch, double lambda, const SinkhornOptions& options,
                      unsigned threads) {
  const std::size_t B = batch.size();
  if (B < 2) throw std::invalid_argument("path_diversity: need at least two paths");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < B; ++i) {
    for (std::size_t j = i + 1; j < B; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> distances(pairs.size());
  parallel_for(
      pairs.size(),
      [&](std::size_t k) { distances[k] = sinkhorn_distance(batch[pairs[k].first], batch[pairs[k].second], lambda, options); },
      threads);
  // Summing in sorted order makes the mean independent of batch order.
  std::sort(distances.begin(), distances.end());
  double sum = 0.0;
  for (double v : distances) sum += 2.0 * v;
  return sum / static_cast<double>(B * (B - 1));
}

}  // namespace gtmp
