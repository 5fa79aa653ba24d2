#include <cstdio>
#include <set>
#include <sstream>

#include "harness.hpp"

namespace gtmp::bench {

namespace {

constexpr double kCanvasPx = 800.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

SvgFrame svg_frame(const World& world) {
  if (world.dim() != 2) throw DimensionError("render_svg: only 2-D worlds can be rendered");
  const auto& lo = world.limits().lower();
  const auto& hi = world.limits().upper();
  SvgFrame f;
  f.scale = kCanvasPx / std::max(hi[0] - lo[0], hi[1] - lo[1]);
  f.x0 = lo[0];
  f.y0 = lo[1];
  f.height_px = (hi[1] - lo[1]) * f.scale;
  return f;
}

std::string render_svg(const World& world, const PlanDocument& doc, std::size_t spline_samples) {
  const SvgFrame f = svg_frame(world);
  const auto& lo = world.limits().lower();
  const auto& hi = world.limits().upper();
  const double width_px = (hi[0] - lo[0]) * f.scale;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width_px) << "\" height=\"" << fmt(f.height_px)
      << "\" viewBox=\"0 0 " << fmt(width_px) << ' ' << fmt(f.height_px) << "\">\n";
  svg << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << fmt(width_px) << "\" height=\"" << fmt(f.height_px)
      << "\" fill=\"white\"/>\n<g class=\"obstacles\" fill=\"black\">\n";

  if (const auto* grid = std::get_if<OccupancyGrid>(&world.geometry())) {
    const double res = grid->resolution();
    // One rect per horizontal run of occupied cells.
    for (std::size_t iy = 0; iy < grid->height(); ++iy) {
      std::size_t ix = 0;
      while (ix < grid->width()) {
        if (!grid->occupied(ix, iy)) {
          ++ix;
          continue;
        }
        const std::size_t start = ix;
        while (ix < grid->width() && grid->occupied(ix, iy)) ++ix;
        const double x = grid->origin_x() + res * static_cast<double>(start);
        const double y_top = grid->origin_y() + res * static_cast<double>(iy + 1);
        svg << "<rect x=\"" << fmt(f.px(x)) << "\" y=\"" << fmt(f.py(y_top)) << "\" width=\""
            << fmt(res * static_cast<double>(ix - start) * f.scale) << "\" height=\"" << fmt(res * f.scale) << "\"/>\n";
      }
    }
  } else {
    const auto& prims = std::get<PrimitiveSet>(world.geometry());
    for (const auto& s : prims.spheres) {
      svg << "<circle cx=\"" << fmt(f.px(s.center[0])) << "\" cy=\"" << fmt(f.py(s.center[1])) << "\" r=\""
          << fmt(s.radius * f.scale) << "\"/>\n";
    }
    for (const auto& b : prims.boxes) {
      svg << "<rect x=\"" << fmt(f.px(b.center[0] - b.half_extents[0])) << "\" y=\""
          << fmt(f.py(b.center[1] + b.half_extents[1])) << "\" width=\"" << fmt(2 * b.half_extents[0] * f.scale)
          << "\" height=\"" << fmt(2 * b.half_extents[1] * f.scale) << "\"/>\n";
    }
  }
  svg << "</g>\n<g class=\"paths\" fill=\"none\" stroke-width=\"1.5\">\n";

  const PlanResult& plan = doc.plan;
  for (std::size_t b = 0; b < plan.batch_size(); ++b) {
    for (const auto& q : plan.paths[b]) require_dim(q.size(), 2, "render_svg path node");
    const Path shape =
        b < doc.splines.size() ? sample_spline_path(doc.splines[b], spline_samples) : plan.paths[b];
    svg << "<polyline class=\"path\" stroke=\"" << (plan.feasible[b] ? "#1f77b4" : "#bbbbbb") << "\" points=\"";
    for (std::size_t k = 0; k < shape.size(); ++k) {
      svg << (k ? " " : "") << fmt(f.px(shape[k][0])) << ',' << fmt(f.py(shape[k][1]));
    }
    svg << "\"/>\n";
  }
  svg << "</g>\n";

  if (plan.batch_size() > 0) {
    const Vector& start = plan.paths.front().front();
    std::set<Vector> goals;
    for (const auto& p : plan.paths) goals.insert(p.back());
    for (const auto& g : goals) {
      svg << "<circle class=\"goal\" cx=\"" << fmt(f.px(g[0])) << "\" cy=\"" << fmt(f.py(g[1]))
          << "\" r=\"6\" fill=\"green\"/>\n";
    }
    svg << "<circle class=\"start\" cx=\"" << fmt(f.px(start[0])) << "\" cy=\"" << fmt(f.py(start[1]))
        << "\" r=\"6\" fill=\"red\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace gtmp::bench
