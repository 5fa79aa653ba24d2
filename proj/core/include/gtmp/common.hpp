#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtmp {

/// A configuration (or any d-dimensional coordinate vector).
using Vector = std::vector<double>;
using VectorView = std::span<const double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown when inputs have inconsistent dimensions or shapes.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a planning problem is ill-posed: the start, or every goal,
/// lies in collision. Distinct from a plan that merely finds no feasible path.
class InvalidProblem : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(want) +
                         ", got " + std::to_string(got));
  }
}

}  // namespace gtmp
