#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "gtmp/common.hpp"

namespace gtmp {

/// Axis-aligned configuration bounds. Defines the dimension d of C.
class ConfigLimits {
public:
  ConfigLimits(Vector lower, Vector upper);

  std::size_t dim() const { return lower_.size(); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  bool contains(const double* q) const;
  double diagonal() const;

private:
  Vector lower_;
  Vector upper_;
};

/// Planar occupancy raster. Cell (ix, iy) covers
/// [origin_x + ix*res, origin_x + (ix+1)*res) x [origin_y + iy*res, ...);
/// row iy = 0 is the bottom of the map.
class OccupancyGrid {
public:
  OccupancyGrid(std::size_t width, std::size_t height, std::vector<std::uint8_t> occupied,
                double origin_x, double origin_y, double resolution);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  double origin_x() const { return origin_x_; }
  double origin_y() const { return origin_y_; }
  double resolution() const { return resolution_; }
  bool occupied(std::size_t ix, std::size_t iy) const { return cells_[iy * width_ + ix] != 0; }
  const std::vector<std::uint8_t>& cells() const { return cells_; }

  /// Cell index containing (x, y), or -1 when outside the raster.
  std::ptrdiff_t cell_at(double x, double y) const;

  /// Limits covering exactly the raster extent.
  ConfigLimits extent() const;

private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> cells_;
  double origin_x_;
  double origin_y_;
  double resolution_;
};

struct Sphere {
  Vector center;
  double radius;
};

/// Axis-aligned box.
struct Box {
  Vector center;
  Vector half_extents;
};

struct PrimitiveSet {
  std::vector<Sphere> spheres;
  std::vector<Box> boxes;
};

using Geometry = std::variant<OccupancyGrid, PrimitiveSet>;

/// Squared Euclidean distance (in cells) from every cell center to the
/// nearest occupied cell center; +inf when the grid has no occupied cell.
/// Exact lower-envelope transform, linear in the number of cells.
std::vector<double> squared_distance_transform(const OccupancyGrid& grid);

/// Immutable collision world: geometry, configuration limits and the
/// clearance margin delta defining the delta-interior of free space.
class World {
public:
  World(ConfigLimits limits, Geometry geometry, double margin_delta = 0.0);

  /// Grid world whose limits are the raster extent.
  static World from_grid(OccupancyGrid grid, double margin_delta = 0.0);

  std::size_t dim() const { return limits_.dim(); }
  const ConfigLimits& limits() const { return limits_; }
  const Geometry& geometry() const { return geometry_; }
  double margin_delta() const { return margin_delta_; }
  World with_margin(double margin_delta) const;

  /// Unchecked hot-path query on a pointer to dim() coordinates.
  bool is_free(const double* q) const;

  /// Distance from q to the obstacle region (cell-center metric on grids).
  /// Not clamped by the limits.
  double clearance(VectorView q) const;

private:
  bool grid_free(const OccupancyGrid& grid, const double* q) const;
  bool primitives_free(const PrimitiveSet& prims, const double* q) const;

  ConfigLimits limits_;
  Geometry geometry_;
  double margin_delta_;
  std::vector<double> grid_clearance_;  // world units, filled when margin_delta > 0
};

/// 0 if q is in the delta-interior of free space, +inf otherwise.
double collision_cost(const World& world, VectorView q);

/// Probe k of H on the segment a -> b, written to out (d values).
/// Endpoints are reproduced exactly and probe k of (a, b) is bitwise equal
/// to probe H-1-k of (b, a).
inline void probe_point(const double* a, const double* b, std::size_t d, std::size_t k,
                        std::size_t H, double* out) {
  if (k == 0) {
    for (std::size_t c = 0; c < d; ++c) out[c] = a[c];
  } else if (k + 1 == H) {
    for (std::size_t c = 0; c < d; ++c) out[c] = b[c];
  } else {
    const double wa = static_cast<double>(H - 1 - k);
    const double wb = static_cast<double>(k);
    const double denom = static_cast<double>(H - 1);
    for (std::size_t c = 0; c < d; ++c) out[c] = (wa * a[c] + wb * b[c]) / denom;
  }
}

/// H equidistant points from q to q2, both endpoints included.
std::vector<Vector> edge_probe_points(VectorView q, VectorView q2, std::size_t H);

/// Mean probe collision cost plus Euclidean length: ||q - q2|| or +inf.
double edge_cost(const World& world, VectorView q, VectorView q2, std::size_t H);

/// Unchecked variant of edge_cost used by the batched builders.
double edge_cost_unchecked(const World& world, const double* q, const double* q2, std::size_t H);

double euclidean_distance(const double* a, const double* b, std::size_t d);

}  // namespace gtmp
