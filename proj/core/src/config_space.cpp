#include "gtmp/config_space.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace gtmp {

ConfigLimits::ConfigLimits(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw DimensionError("ConfigLimits: dimension must be at least 1");
  require_dim(upper_.size(), lower_.size(), "ConfigLimits upper");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) {
      throw std::invalid_argument("ConfigLimits: lower must be strictly below upper on every axis");
    }
  }
}

bool ConfigLimits::contains(const double* q) const {
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(q[i] >= lower_[i] && q[i] <= upper_[i])) return false;
  }
  return true;
}

double ConfigLimits::diagonal() const { return euclidean_distance(lower_.data(), upper_.data(), dim()); }

OccupancyGrid::OccupancyGrid(std::size_t width, std::size_t height,
                             std::vector<std::uint8_t> occupied, double origin_x, double origin_y,
                             double resolution)
    : width_(width),
      height_(height),
      cells_(std::move(occupied)),
      origin_x_(origin_x),
      origin_y_(origin_y),
      resolution_(resolution) {
  if (width_ == 0 || height_ == 0) throw std::invalid_argument("OccupancyGrid: empty raster");
  if (cells_.size() != width_ * height_) {
    throw DimensionError("OccupancyGrid: cell count does not match width*height");
  }
  if (!(resolution_ > 0.0) || !std::isfinite(resolution_)) {
    throw std::invalid_argument("OccupancyGrid: resolution must be positive");
  }
}

std::ptrdiff_t OccupancyGrid::cell_at(double x, double y) const {
  const double fx = (x - origin_x_) / resolution_;
  const double fy = (y - origin_y_) / resolution_;
  if (!(fx >= 0.0) || !(fy >= 0.0)) return -1;
  const auto ix = static_cast<std::size_t>(fx);
  const auto iy = static_cast<std::size_t>(fy);
  if (ix >= width_ || iy >= height_) return -1;
  return static_cast<std::ptrdiff_t>(iy * width_ + ix);
}

ConfigLimits OccupancyGrid::extent() const {
  return ConfigLimits({origin_x_, origin_y_},
                      {origin_x_ + resolution_ * static_cast<double>(width_),
                       origin_y_ + resolution_ * static_cast<double>(height_)});
}

namespace {

// Lower envelope of parabolas (Felzenszwalb & Huttenlocher) over one line.
void distance_transform_1d(const double* f, std::size_t n, double* out, std::vector<std::size_t>& v,
                           std::vector<double>& z) {
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  std::size_t k = 0;
  std::size_t first = n;
  for (std::size_t q = 0; q < n; ++q) {
    if (std::isfinite(f[q])) {
      first = q;
      break;
    }
  }
  if (first == n) {
    std::fill(out, out + n, kInf);
    return;
  }
  v[0] = first;
  z[0] = -kInf;
  z[1] = kInf;
  for (std::size_t q = first + 1; q < n; ++q) {
    if (!std::isfinite(f[q])) continue;
    const double qd = static_cast<double>(q);
    double s = 0.0;
    // z[0] = -inf bounds the scan.
    while (true) {
      const double vk = static_cast<double>(v[k]);
      s = ((f[q] + qd * qd) - (f[v[k]] + vk * vk)) / (2.0 * qd - 2.0 * vk);
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const double qd = static_cast<double>(q);
    while (z[k + 1] < qd) ++k;
    const double diff = qd - static_cast<double>(v[k]);
    out[q] = diff * diff + f[v[k]];
  }
}

}  // namespace

std::vector<double> squared_distance_transform(const OccupancyGrid& grid) {
  const std::size_t w = grid.width();
  const std::size_t h = grid.height();
  std::vector<double> field(w * h);
  for (std::size_t i = 0; i < field.size(); ++i) field[i] = grid.cells()[i] ? 0.0 : kInf;

  std::vector<std::size_t> v;
  std::vector<double> z;
  std::vector<double> line(std::max(w, h));
  std::vector<double> result(std::max(w, h));
  // columns
  for (std::size_t x = 0; x < w; ++x) {
    for (std::size_t y = 0; y < h; ++y) line[y] = field[y * w + x];
    distance_transform_1d(line.data(), h, result.data(), v, z);
    for (std::size_t y = 0; y < h; ++y) field[y * w + x] = result[y];
  }
  // rows
  for (std::size_t y = 0; y < h; ++y) {
    distance_transform_1d(field.data() + y * w, w, result.data(), v, z);
    std::copy(result.begin(), result.begin() + static_cast<std::ptrdiff_t>(w), field.begin() + static_cast<std::ptrdiff_t>(y * w));
  }
  return field;
}

World::World(ConfigLimits limits, Geometry geometry, double margin_delta)
    : limits_(std::move(limits)), geometry_(std::move(geometry)), margin_delta_(margin_delta) {
  if (!(margin_delta_ >= 0.0) || !std::isfinite(margin_delta_)) {
    throw std::invalid_argument("World: margin_delta must be a finite non-negative number");
  }
  if (const auto* grid = std::get_if<OccupancyGrid>(&geometry_)) {
    require_dim(limits_.dim(), 2, "World limits for an occupancy grid");
    if (margin_delta_ > 0.0) {
      grid_clearance_ = squared_distance_transform(*grid);
      for (double& c : grid_clearance_) c = std::sqrt(c) * grid->resolution();
    }
  } else {
    const auto& prims = std::get<PrimitiveSet>(geometry_);
    for (const auto& s : prims.spheres) {
      require_dim(s.center.size(), dim(), "Sphere center");
      if (!(s.radius > 0.0)) throw std::invalid_argument("Sphere radius must be positive");
    }
    for (const auto& b : prims.boxes) {
      require_dim(b.center.size(), dim(), "Box center");
      require_dim(b.half_extents.size(), dim(), "Box half extents");
      for (double e : b.half_extents) {
        if (!(e > 0.0)) throw std::invalid_argument("Box half extents must be positive");
      }
    }
  }
}

World World::from_grid(OccupancyGrid grid, double margin_delta) {
  ConfigLimits limits = grid.extent();
  return World(std::move(limits), std::move(grid), margin_delta);
}

World World::with_margin(double margin_delta) const { return World(limits_, geometry_, margin_delta); }

bool World::grid_free(const OccupancyGrid& grid, const double* q) const {
  const std::ptrdiff_t cell = grid.cell_at(q[0], q[1]);
  if (cell < 0) return false;
  if (grid.cells()[static_cast<std::size_t>(cell)]) return false;
  if (margin_delta_ > 0.0) return grid_clearance_[static_cast<std::size_t>(cell)] > margin_delta_;
  return true;
}

namespace {

double sphere_distance(const Sphere& s, const double* q, std::size_t d) {
  return euclidean_distance(s.center.data(), q, d) - s.radius;
}

// Outside distance to an axis-aligned box; non-positive inside.
double box_distance(const Box& b, const double* q, std::size_t d) {
  double outside = 0.0;
  double inside = -kInf;
  for (std::size_t i = 0; i < d; ++i) {
    const double excess = std::abs(q[i] - b.center[i]) - b.half_extents[i];
    if (excess > 0.0) outside += excess * excess;
    inside = std::max(inside, excess);
  }
  return outside > 0.0 ? std::sqrt(outside) : inside;
}

}  // namespace

bool World::primitives_free(const PrimitiveSet& prims, const double* q) const {
  const std::size_t d = dim();
  for (const auto& s : prims.spheres) {
    if (sphere_distance(s, q, d) <= margin_delta_) return false;
  }
  for (const auto& b : prims.boxes) {
    if (box_distance(b, q, d) <= margin_delta_) return false;
  }
  return true;
}

bool World::is_free(const double* q) const {
  if (!limits_.contains(q)) return false;
  if (const auto* grid = std::get_if<OccupancyGrid>(&geometry_)) return grid_free(*grid, q);
  return primitives_free(std::get<PrimitiveSet>(geometry_), q);
}

double World::clearance(VectorView q) const {
  require_dim(q.size(), dim(), "World::clearance query");
  if (const auto* grid = std::get_if<OccupancyGrid>(&geometry_)) {
    const std::ptrdiff_t cell = grid->cell_at(q[0], q[1]);
    if (cell < 0) return 0.0;
    if (!grid_clearance_.empty()) return grid_clearance_[static_cast<std::size_t>(cell)];
    // Computed on demand for margin-free worlds.
    const auto field = squared_distance_transform(*grid);
    return std::sqrt(field[static_cast<std::size_t>(cell)]) * grid->resolution();
  }
  const auto& prims = std::get<PrimitiveSet>(geometry_);
  double best = kInf;
  for (const auto& s : prims.spheres) best = std::min(best, sphere_distance(s, q.data(), dim()));
  for (const auto& b : prims.boxes) best = std::min(best, box_distance(b, q.data(), dim()));
  return best;
}

double euclidean_distance(const double* a, const double* b, std::size_t d) {
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double collision_cost(const World& world, VectorView q) {
  require_dim(q.size(), world.dim(), "collision_cost query");
  return world.is_free(q.data()) ? 0.0 : kInf;
}

std::vector<Vector> edge_probe_points(VectorView q, VectorView q2, std::size_t H) {
  if (H < 2) throw std::invalid_argument("edge_probe_points: H must be at least 2");
  require_dim(q2.size(), q.size(), "edge_probe_points target");
  std::vector<Vector> probes(H, Vector(q.size()));
  for (std::size_t k = 0; k < H; ++k) probe_point(q.data(), q2.data(), q.size(), k, H, probes[k].data());
  return probes;
}

double edge_cost_unchecked(const World& world, const double* q, const double* q2, std::size_t H) {
  const std::size_t d = world.dim();
  std::array<double, 16> small{};
  std::vector<double> large;
  double* probe = small.data();
  if (d > small.size()) {
    large.resize(d);
    probe = large.data();
  }
  double collision_sum = 0.0;
  for (std::size_t k = 0; k < H; ++k) {
    probe_point(q, q2, d, k, H, probe);
    if (!world.is_free(probe)) {
      collision_sum = kInf;
      break;  // every later probe can only add to an already infinite sum
    }
  }
  return collision_sum / static_cast<double>(H) + euclidean_distance(q, q2, d);
}

double edge_cost(const World& world, VectorView q, VectorView q2, std::size_t H) {
  if (H < 2) throw std::invalid_argument("edge_cost: H must be at least 2");
  require_dim(q.size(), world.dim(), "edge_cost source");
  require_dim(q2.size(), world.dim(), "edge_cost target");
  return edge_cost_unchecked(world, q.data(), q2.data(), H);
}

}  // namespace gtmp
