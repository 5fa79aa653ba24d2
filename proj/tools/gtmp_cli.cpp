// gtmp: batch planning, (M, N) sweeps, SVG overlays and task generation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gtmp/world_io.hpp"
#include "harness.hpp"

namespace fs = std::filesystem;
using namespace gtmp;
using namespace gtmp::bench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoFeasible = 1;
constexpr int kExitInputError = 2;

struct CommonFlags {
  std::string world;
  std::string tasks;
  std::size_t H = 10;
  std::size_t B = 100;
  std::uint64_t seed = 0;
  std::string planner = "straight";
  double lambda = kDefaultSinkhornLambda;
  double margin = -1.0;
  std::string out = ".";
  std::string format = "csv";
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--world", f.world, "World JSON (overrides the task file's world)");
  cmd->add_option("--tasks", f.tasks, "Task set JSON")->required();
  cmd->add_option("--H", f.H, "Probes per edge")->capture_default_str();
  cmd->add_option("--B", f.B, "Batch size")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Sampling seed")->capture_default_str();
  cmd->add_option("--planner", f.planner, "straight|akima")
      ->check(CLI::IsMember({"straight", "akima"}))
      ->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "Sinkhorn entropic scalar")->capture_default_str();
  cmd->add_option("--margin", f.margin, "Override the world's margin_delta");
  cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
  cmd->add_option("--format", f.format, "csv|json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("--threads", f.threads, "Worker threads (0 = hardware)")->capture_default_str();
}

World resolve_world(const CommonFlags& f, const TaskSet& set) {
  fs::path world_path = f.world;
  if (world_path.empty()) {
    if (set.world_ref.empty()) throw IoError("no --world given and the task file names no world");
    world_path = set.world_ref;
    if (world_path.is_relative()) world_path = fs::path(f.tasks).parent_path() / world_path;
  }
  World world = load_world(world_path);
  if (f.margin >= 0.0) world = world.with_margin(f.margin);
  return world;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
}

int run_plan(const CommonFlags& f, std::size_t M, std::size_t N) {
  const TaskSet set = load_tasks(f.tasks);
  const World world = resolve_world(f, set);
  RunOptions options;
  options.params = PlannerParams{M, N, f.H, f.B, f.seed};
  options.params.validate();
  options.planner = parse_planner(f.planner);
  options.lambda = f.lambda;
  options.threads = f.threads;

  fs::create_directories(f.out);
  std::vector<MetricsRow> rows;
  std::size_t feasible = 0;
  for (std::size_t t = 0; t < set.tasks.size(); ++t) {
    const std::string id = "task" + std::to_string(t);
    TaskRun run = run_task(world, set.tasks[t], id, options);
    feasible += run.plan.feasible_count();
    const std::string doc = run.akima ? akima_result_to_json(*run.akima, 0, 2) : plan_result_to_json(run.plan, 2);
    write_text(fs::path(f.out) / ("plan_" + id + ".json"), doc + "\n");
    rows.push_back(std::move(run.row));
  }
  if (f.format == "csv") {
    std::ostringstream csv;
    write_metrics_csv(csv, rows);
    write_text(fs::path(f.out) / "metrics.csv", csv.str());
    std::cout << csv.str();
  } else {
    write_text(fs::path(f.out) / "metrics.json", metrics_json(rows) + "\n");
    std::cout << metrics_json(rows) << '\n';
  }
  return feasible == 0 ? kExitNoFeasible : kExitOk;
}

int run_sweep_cmd(const CommonFlags& f, const std::vector<std::size_t>& Ms, const std::vector<std::size_t>& Ns,
                  std::size_t reps, std::size_t task_index) {
  const TaskSet set = load_tasks(f.tasks);
  if (task_index >= set.tasks.size()) throw std::invalid_argument("--task index out of range");
  const World world = resolve_world(f, set);
  SweepSpec spec{Ms, Ns, f.H, f.B, reps};
  RunOptions base;
  base.params.seed = f.seed;
  base.planner = parse_planner(f.planner);
  base.lambda = f.lambda;
  base.threads = f.threads;
  const auto rows = run_sweep(world, set.tasks[task_index], "task" + std::to_string(task_index), spec, base);

  fs::create_directories(f.out);
  if (f.format == "csv") {
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    write_text(fs::path(f.out) / "sweep.csv", csv.str());
    std::cout << csv.str();
  } else {
    write_text(fs::path(f.out) / "sweep.json", sweep_json(rows) + "\n");
    std::cout << sweep_json(rows) << '\n';
  }
  for (const auto& r : rows) {
    if (r.metrics.cf_percent > 0.0) return kExitOk;
  }
  return kExitNoFeasible;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch multipartite-graph motion planner"};
  app.require_subcommand(1);

  CommonFlags plan_flags;
  std::size_t plan_M = 3, plan_N = 50;
  auto* plan_cmd = app.add_subcommand("plan", "Plan a batch for every task and report metrics");
  add_common(plan_cmd, plan_flags);
  plan_cmd->add_option("--M", plan_M, "Layers")->capture_default_str();
  plan_cmd->add_option("--N", plan_N, "Waypoints per layer")->capture_default_str();

  CommonFlags sweep_flags;
  sweep_flags.B = 200;
  std::vector<std::size_t> sweep_M{2, 3, 4}, sweep_N{10, 50, 100};
  std::size_t reps = 1, task_index = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid sweep over (M, N) on one task");
  add_common(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--M", sweep_M, "Comma-separated layer counts")->delimiter(',');
  sweep_cmd->add_option("--N", sweep_N, "Comma-separated waypoint counts")->delimiter(',');
  sweep_cmd->add_option("--reps", reps, "Repetitions per (M, N)")->capture_default_str();
  sweep_cmd->add_option("--task", task_index, "Task index in the task file")->capture_default_str();

  std::string render_world, render_plan, render_out;
  auto* render_cmd = app.add_subcommand("render", "Render a plan result over a 2-D world as SVG");
  render_cmd->add_option("--world", render_world, "World JSON")->required();
  render_cmd->add_option("--plan", render_plan, "Plan result JSON")->required();
  render_cmd->add_option("--out", render_out, "Output SVG path")->required();

  std::string gen_world, gen_out;
  std::size_t gen_count = 10, gen_goals = 1;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("gen-tasks", "Sample collision-free start/goal tasks");
  gen_cmd->add_option("--world", gen_world, "World JSON")->required();
  gen_cmd->add_option("--out", gen_out, "Output task file")->required();
  gen_cmd->add_option("--count", gen_count, "Number of tasks")->capture_default_str();
  gen_cmd->add_option("--goals", gen_goals, "Goals per task")->capture_default_str();
  gen_cmd->add_option("--seed", gen_seed, "Task sampling seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*plan_cmd) return run_plan(plan_flags, plan_M, plan_N);
    if (*sweep_cmd) return run_sweep_cmd(sweep_flags, sweep_M, sweep_N, reps, task_index);
    if (*render_cmd) {
      const World world = load_world(render_world);
      const PlanDocument doc = plan_document_from_json(read_text(render_plan));
      write_text(render_out, render_svg(world, doc));
      return kExitOk;
    }
    if (*gen_cmd) {
      const World world = load_world(gen_world);
      const fs::path out_path = gen_out;
      // Store the world relative to the task file when possible.
      std::string ref = fs::absolute(gen_world).string();
      const fs::path rel = fs::relative(fs::absolute(gen_world), fs::absolute(out_path).parent_path());
      if (!rel.empty()) ref = rel.string();
      save_tasks(generate_tasks(world, ref, gen_count, gen_seed, gen_goals), out_path);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    // Unreadable files, invalid configurations and ill-posed tasks.
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
