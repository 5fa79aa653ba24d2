#include "harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "gtmp/metrics.hpp"
#include "gtmp/world_io.hpp"
#include "json.hpp"

namespace gtmp::bench {

using nlohmann::json;

namespace {

constexpr const char* kMetricsHeader = "# gtmp-metrics v1";
constexpr const char* kSweepHeader = "# gtmp-sweep v1";

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

json row_json(const MetricsRow& r) {
  return {{"task_id", r.task_id},
          {"planner", r.planner},
          {"CF_percent", r.cf_percent},
          {"min_cosim_mean", number_or_null(r.min_cosim_mean)},
          {"PD", number_or_null(r.pd)},
          {"plan_time_ms", r.plan_time_ms}};
}

}  // namespace

TaskSet load_tasks(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open task file '" + path.string() + "'");
  try {
    const json doc = json::parse(in);
    TaskSet set;
    set.world_ref = doc.value("world", "");
    set.seed = doc.value("seed", std::uint64_t{0});
    for (const auto& t : doc.at("tasks")) {
      Task task{t.at("start").get<Vector>(), t.at("goals").get<std::vector<Vector>>()};
      if (task.goals.empty()) throw IoError("task file: every task needs at least one goal");
      set.tasks.push_back(std::move(task));
    }
    return set;
  } catch (const json::exception& e) {
    throw IoError("task file '" + path.string() + "': " + e.what());
  }
}

void save_tasks(const TaskSet& set, const std::filesystem::path& path) {
  json tasks = json::array();
  for (const auto& t : set.tasks) tasks.push_back({{"start", t.start}, {"goals", t.goals}});
  const json doc = {{"world", set.world_ref}, {"seed", set.seed}, {"tasks", std::move(tasks)}};
  std::ofstream out(path);
  if (!out) throw IoError("cannot write task file '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

TaskSet generate_tasks(const World& world, const std::string& world_ref, std::size_t count, std::uint64_t seed,
                       std::size_t goals_per_task) {
  if (goals_per_task < 1) throw std::invalid_argument("generate_tasks: goals_per_task must be >= 1");
  const double min_separation = 0.25 * world.limits().diagonal();
  const ConfigLimits& limits = world.limits();
  const UniformProposal uniform;
  const CounterRng root(seed);
  constexpr std::uint64_t kMaxDraws = 1'000'000;
  std::uint64_t draw = 0;
  const auto free_sample = [&]() {
    Vector q(limits.dim());
    while (draw < kMaxDraws) {
      uniform.sample(root.fork(draw++), limits, q.data());
      if (world.is_free(q.data())) return q;
    }
    throw InvalidProblem("generate_tasks: could not find free configurations");
  };

  TaskSet set;
  set.world_ref = world_ref;
  set.seed = seed;
  while (set.tasks.size() < count) {
    Task task{free_sample(), {}};
    while (task.goals.size() < goals_per_task) {
      Vector g = free_sample();
      if (euclidean_distance(task.start.data(), g.data(), g.size()) >= min_separation) task.goals.push_back(std::move(g));
    }
    set.tasks.push_back(std::move(task));
  }
  return set;
}

PlannerKind parse_planner(const std::string& name) {
  if (name == "straight") return PlannerKind::Straight;
  if (name == "akima") return PlannerKind::Akima;
  throw std::invalid_argument("unknown planner '" + name + "' (expected straight|akima)");
}

const char* planner_name(PlannerKind kind) { return kind == PlannerKind::Akima ? "akima" : "straight"; }

TaskRun run_task(const World& world, const Task& task, const std::string& task_id, const RunOptions& options) {
  const GoalSet goals(task.goals);
  TaskRun run;
  const auto t0 = std::chrono::steady_clock::now();
  if (options.planner == PlannerKind::Akima) {
    run.akima = plan_akima(world, task.start, goals, options.params, options.threads);
  } else {
    run.plan = plan(world, task.start, goals, options.params, options.threads);
  }
  const auto t1 = std::chrono::steady_clock::now();
  if (run.akima) run.plan = run.akima->plan;

  MetricsRow& row = run.row;
  row.task_id = task_id;
  row.planner = planner_name(options.planner);
  row.plan_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  const std::size_t B = run.plan.batch_size();
  row.cf_percent = 100.0 * static_cast<double>(run.plan.feasible_count()) / static_cast<double>(B);

  std::vector<EmpiricalPath> feasible_paths;
  double cosim_sum = 0.0;
  for (std::size_t b = 0; b < B; ++b) {
    if (!run.plan.feasible[b]) continue;
    feasible_paths.push_back(run.plan.paths[b]);
    const Path shape = run.akima ? sample_spline_path(run.akima->splines[b], kSplineMetricSamples) : run.plan.paths[b];
    cosim_sum += min_cosine_similarity(shape);
  }
  row.min_cosim_mean = feasible_paths.empty() ? std::nan("") : cosim_sum / static_cast<double>(feasible_paths.size());
  row.pd = feasible_paths.size() < 2 ? std::nan("") : path_diversity(feasible_paths, options.lambda, {}, options.threads);
  return run;
}

void SweepSpec::validate() const {
  if (M_values.empty() || N_values.empty()) throw std::invalid_argument("sweep: M and N value lists must be non-empty");
  for (auto v : M_values) {
    if (v < 1) throw std::invalid_argument("sweep: M values must be >= 1");
  }
  for (auto v : N_values) {
    if (v < 1) throw std::invalid_argument("sweep: N values must be >= 1");
  }
  if (H < 2) throw std::invalid_argument("sweep: H must be >= 2");
  if (B < 1 || repetitions < 1) throw std::invalid_argument("sweep: B and repetitions must be >= 1");
}

std::vector<SweepRow> run_sweep(const World& world, const Task& task, const std::string& task_id,
                                const SweepSpec& spec, const RunOptions& base) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.M_values.size() * spec.N_values.size() * spec.repetitions);
  for (std::size_t M : spec.M_values) {
    for (std::size_t N : spec.N_values) {
      for (std::size_t r = 0; r < spec.repetitions; ++r) {
        RunOptions options = base;
        options.params.M = M;
        options.params.N = N;
        options.params.H = spec.H;
        options.params.B = spec.B;
        options.params.seed = batch_seed(base.params.seed, r);
        SweepRow row{M, N, r, options.params.seed, run_task(world, task, task_id, options).row};
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
  out << kMetricsHeader << '\n' << "task_id,planner,CF_percent,min_cosim_mean,PD,plan_time_ms\n";
  for (const auto& r : rows) {
    out << r.task_id << ',' << r.planner << ',' << format_number(r.cf_percent, 2) << ','
        << format_number(r.min_cosim_mean, 6) << ',' << format_number(r.pd, 6) << ','
        << format_number(r.plan_time_ms, 3) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n' << "M,N,repetition,seed,task_id,planner,CF_percent,min_cosim_mean,PD,plan_time_ms\n";
  for (const auto& s : rows) {
    const MetricsRow& r = s.metrics;
    out << s.M << ',' << s.N << ',' << s.repetition << ',' << s.seed << ',' << r.task_id << ',' << r.planner << ','
        << format_number(r.cf_percent, 2) << ',' << format_number(r.min_cosim_mean, 6) << ','
        << format_number(r.pd, 6) << ',' << format_number(r.plan_time_ms, 3) << '\n';
  }
}

std::string metrics_json(const std::vector<MetricsRow>& rows) {
  json doc = json::array();
  for (const auto& r : rows) doc.push_back(row_json(r));
  return doc.dump(2);
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  json doc = json::array();
  for (const auto& s : rows) {
    json j = row_json(s.metrics);
    j["M"] = s.M;
    j["N"] = s.N;
    j["repetition"] = s.repetition;
    j["seed"] = s.seed;
    doc.push_back(std::move(j));
  }
  return doc.dump(2);
}

bool reprobe_path(const World& world, const Path& path, std::size_t H) {
  for (std::size_t k = 1; k < path.size(); ++k) {
    for (const auto& probe : edge_probe_points(path[k - 1], path[k], H)) {
      if (collision_cost(world, probe) != 0.0) return false;
    }
  }
  return true;
}

World make_corridor_world() {
  constexpr std::size_t kCells = 200;
  constexpr double kRes = 0.05;
  std::vector<std::uint8_t> cells(kCells * kCells, 0);
  const auto fill = [&](double x0, double x1, double y0, double y1) {
    for (std::size_t iy = 0; iy < kCells; ++iy) {
      for (std::size_t ix = 0; ix < kCells; ++ix) {
        const double cx = (static_cast<double>(ix) + 0.5) * kRes;
        const double cy = (static_cast<double>(iy) + 0.5) * kRes;
        if (cx > x0 && cx < x1 && cy > y0 && cy < y1) cells[iy * kCells + ix] = 1;
      }
    }
  };
  fill(2.5, 4.25, 1.0, 10.0);  // left wall, gap along the bottom
  fill(5.75, 7.5, 0.0, 9.0);   // right wall, gap along the top
  return World::from_grid(OccupancyGrid(kCells, kCells, std::move(cells), 0.0, 0.0, kRes));
}

Task corridor_task() { return Task{{1.25, 0.5}, {{8.75, 0.5}}}; }

}  // namespace gtmp::bench
