#pragma once

#include <vector>

#include "gtmp/common.hpp"

namespace gtmp {

/// A path viewed as a uniform empirical distribution over its points.
using EmpiricalPath = std::vector<Vector>;

inline constexpr double kDefaultSinkhornLambda = 5e-3;

/// Raised when Sinkhorn iterations hit the iteration cap.
class SinkhornNotConverged : public std::runtime_error {
public:
  SinkhornNotConverged(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

struct SinkhornOptions {
  double tolerance = 1e-6;     ///< L1 marginal violation
  std::size_t max_iterations = 1000;
};

/// Arc length: sum of consecutive segment lengths.
double total_variation(const EmpiricalPath& path);

/// Smallest cosine similarity between consecutive non-degenerate segment
/// directions. Zero-length segments are skipped; a path with a single
/// non-degenerate segment has no turn and scores 1.
double min_cosine_similarity(const EmpiricalPath& path);

/// Transport cost <P, C> of the entropic OT plan between two uniform
/// empirical distributions, squared Euclidean ground cost. Log-domain
/// Sinkhorn; arguments are put in a canonical order so the result is
/// exactly symmetric. Identical point multisets return exactly 0.
double sinkhorn_distance(const EmpiricalPath& p1, const EmpiricalPath& p2, double lambda = kDefaultSinkhornLambda,
                         const SinkhornOptions& options = {});

/// Mean pairwise Sinkhorn distance over all ordered pairs i != j.
double path_diversity(const std::vector<EmpiricalPath>& batch, double lambda = kDefaultSinkhornLambda,
                      const SinkhornOptions& options = {}, unsigned threads = 0);

}  // namespace gtmp
