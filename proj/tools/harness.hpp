#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gtmp/akima.hpp"
#include "gtmp/metrics.hpp"
#include "gtmp/planner.hpp"
#include "gtmp/plan_io.hpp"

namespace gtmp::bench {

struct Task {
  Vector start;
  std::vector<Vector> goals;
};

struct TaskSet {
  std::string world_ref;
  std::uint64_t seed = 0;
  std::vector<Task> tasks;
};

TaskSet load_tasks(const std::filesystem::path& path);
void save_tasks(const TaskSet& tasks, const std::filesystem::path& path);

/// Rejection-samples `count` tasks with collision-free start and goals at
/// least a quarter of the workspace diagonal apart.
TaskSet generate_tasks(const World& world, const std::string& world_ref, std::size_t count, std::uint64_t seed,
                       std::size_t goals_per_task = 1);

enum class PlannerKind { Straight, Akima };

PlannerKind parse_planner(const std::string& name);
const char* planner_name(PlannerKind kind);

struct RunOptions {
  PlannerParams params;
  PlannerKind planner = PlannerKind::Straight;
  double lambda = kDefaultSinkhornLambda;
  unsigned threads = 0;
};

struct MetricsRow {
  std::string task_id;
  std::string planner;
  double cf_percent = 0.0;
  double min_cosim_mean = 0.0;  ///< NaN when no path is feasible
  double pd = 0.0;              ///< NaN with fewer than two feasible paths
  double plan_time_ms = 0.0;
};

struct TaskRun {
  MetricsRow row;
  PlanResult plan;
  std::optional<AkimaPlanResult> akima;
};

/// Spline edges are densified with this many samples for Min Cosim.
inline constexpr std::size_t kSplineMetricSamples = 8;

/// Plans one batch and scores it. Timing covers the planning call only.
TaskRun run_task(const World& world, const Task& task, const std::string& task_id, const RunOptions& options);

struct SweepSpec {
  std::vector<std::size_t> M_values;
  std::vector<std::size_t> N_values;
  std::size_t H = 10;
  std::size_t B = 200;
  std::size_t repetitions = 1;

  void validate() const;
};

struct SweepRow {
  std::size_t M = 0, N = 0, repetition = 0;
  std::uint64_t seed = 0;
  MetricsRow metrics;
};

/// One row per (M, N, repetition). Repetition r plans with batch_seed(seed, r).
std::vector<SweepRow> run_sweep(const World& world, const Task& task, const std::string& task_id,
                                const SweepSpec& spec, const RunOptions& base);

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::string metrics_json(const std::vector<MetricsRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

/// Re-checks a straight-line path: every edge probed at H points.
bool reprobe_path(const World& world, const Path& path, std::size_t H);

/// Serpentine corridor on [0, 10]^2 (0.05 resolution): two thick walls with
/// narrow gaps at opposite ends. The corridor task below needs four straight
/// segments, i.e. at least three layers.
World make_corridor_world();
Task corridor_task();

/// SVG overlay of a 2-D world and a plan document.
std::string render_svg(const World& world, const PlanDocument& plan, std::size_t spline_samples = 16);

/// Pixel mapping used by render_svg.
struct SvgFrame {
  double scale = 1.0;
  double x0 = 0.0, y0 = 0.0, height_px = 0.0;
  double px(double x) const { return (x - x0) * scale; }
  double py(double y) const { return height_px - (y - y0) * scale; }
};
SvgFrame svg_frame(const World& world);

}  // namespace gtmp::bench
