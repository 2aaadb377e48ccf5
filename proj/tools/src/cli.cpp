#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "brickbo/assembler.hpp"
#include "brickbo/dataset.hpp"
#include "brickbo/error.hpp"
#include "brickbo/export.hpp"
#include "brickbo/io.hpp"

namespace brickbo::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

// Sends text to a file, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file(path, text);
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct Settings {
  // assemble
  std::string target;
  std::string out_dir = ".";
  std::string initial;
  std::string mode = "shortfall";
  AssemblyConfig assembly;
  BoConfig bo;
  StabilityConfig stability;
  double time_budget = 0.0;

  // benchmark
  std::string objective = "all";
  std::string methods = "all";
  int bench_steps = 20;
  int seeds = 10;
  int jobs = 1;

  // dataset
  std::string group;
  std::string shape_class;
  ShapeParams params;
  int per_class = 10;
  std::string in;
  std::string out_file;
  std::size_t count = 10;

  // count
  int n = 2;
  bool split = false;
  std::string convention = "anchored";

  // voxelize
  std::vector<int> extents;
  std::string vox;
};

void add_bo_options(CLI::App* app, Settings& s) {
  app->add_option("--seed", s.bo.seed, "Random seed")->capture_default_str();
  app->add_option("--v", s.bo.initial, "Random candidates evaluated first each step")->capture_default_str();
  app->add_option("--q", s.bo.candidates, "Total candidates evaluated each step")->capture_default_str();
  app->add_option("--zeta", s.bo.acquisition_samples, "Placements scored per acquisition maximization")
      ->capture_default_str();
  app->add_option("--time-budget", s.time_budget,
                  "Acquisition wall-clock budget in seconds instead of --zeta (not reproducible)");
  app->add_option("--gamma0", s.bo.gamma0, "UCB exploration offset")->capture_default_str();
  app->add_option("--gamma1", s.bo.gamma1, "UCB exploration growth per ln(1 + t)")->capture_default_str();
  app->add_option("--lambda-o-min", s.bo.lambda_o_min)->capture_default_str();
  app->add_option("--lambda-o-max", s.bo.lambda_o_max)->capture_default_str();
  app->add_option("--lambda-s-min", s.bo.lambda_s_min)->capture_default_str();
  app->add_option("--lambda-s-max", s.bo.lambda_s_max)->capture_default_str();
  app->add_option("--gp-restarts", s.bo.gp_restarts, "BFGS starts per surrogate fit")->capture_default_str();
}

// Expands {"key": value} into "--key value" tokens for the given subcommand.
std::vector<std::string> config_tokens(const std::string& path, const CLI::App* sub) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("config " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw Error("config " + path + " must be a JSON object");
  std::vector<std::string> tokens;
  auto scalar = [&](const std::string& key, const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) {
      std::ostringstream ss;
      ss.precision(17);
      ss << v.get<double>();
      return ss.str();
    }
    throw Error("config key \"" + key + "\" has an unsupported value");
  };
  for (const auto& [key, value] : doc.items()) {
    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (key == "config" || !opt) throw Error("unknown config key \"" + key + "\" for " + sub->get_name());
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back("--" + key);
      continue;
    }
    tokens.push_back("--" + key);
    if (value.is_array())
      for (const auto& v : value) tokens.push_back(scalar(key, v));
    else
      tokens.push_back(scalar(key, value));
  }
  return tokens;
}

double coverage(const TargetShape& target, std::span<const Primitive> c) {
  const OccupiabilityGrid grid(target, c);
  return static_cast<double>(grid.covered()) / static_cast<double>(target.size());
}

int cmd_assemble(Settings& s, std::ostream& out) {
  const TargetShape target = target_from_json(read_file(s.target));
  if (!s.initial.empty()) s.assembly.initial = combination_from_json(read_file(s.initial));
  s.assembly.rollback_mode = s.mode == "literal" ? RollbackMode::kLiteral : RollbackMode::kShortfall;
  if (s.time_budget > 0) s.bo.time_budget_seconds = s.time_budget;
  const Bounds bounds = target.bounds();
  for (const auto& p : s.assembly.initial)
    for (const auto& cell : footprint(p))
      if (!bounds.contains(cell)) throw Error("initial combination leaves the target extents");

  const AssemblyTrace trace = assemble(target, s.assembly, s.bo, s.stability);
  const fs::path dir(s.out_dir);
  write_file(dir / "trace.json", trace_to_json(trace, s.bo, s.stability));
  write_file(dir / "final.obj", to_obj(trace.final));
  write_file(dir / "final.vox", to_voxels(trace.final, target.extents()));

  char line[160];
  std::snprintf(line, sizeof line, "%s: %zu steps, %d rollbacks, %zu bricks, coverage %.1f%%\n",
                trace.status == AssemblyStatus::kComplete ? "complete" : "saturated", trace.steps.size(),
                trace.rollbacks(), trace.final.size(), 100.0 * coverage(target, trace.final));
  out << line;
  return trace.status == AssemblyStatus::kComplete ? kOk : kSaturated;
}

template <class T, class Parse>
std::vector<T> parse_list(const std::string& text, const std::vector<T>& all, Parse parse, const char* what) {
  if (text == "all") return all;
  std::vector<T> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    const auto v = parse(item);
    if (!v) throw Error(std::string("unknown ") + what + " \"" + item + "\"");
    out.push_back(*v);
  }
  return out;
}

int cmd_benchmark(const Settings& s, std::ostream& out) {
  if (s.bench_steps < 1) throw Error("--steps must be >= 1");
  if (s.seeds < 1) throw Error("--seeds must be >= 1");
  const auto objectives =
      parse_list<Objective>(s.objective, {Objective::kHeight, Objective::kWidth, Objective::kDepth, Objective::kStuds},
                            [](const std::string& x) { return parse_objective(x); }, "objective");
  const auto methods = parse_list<Method>(s.methods, {Method::kBo, Method::kRandom, Method::kGreedy, Method::kOracle},
                                          [](const std::string& x) { return parse_method(x); }, "method");
  BoConfig bo = s.bo;
  if (s.time_budget > 0) bo.time_budget_seconds = s.time_budget;
  bo.validate();

  struct Task {
    Objective objective;
    Method method;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (auto m : methods)
    for (auto o : objectives) {
      if (m == Method::kOracle) {
        tasks.push_back({o, m, 0});
        continue;
      }
      for (int i = 0; i < s.seeds; ++i) tasks.push_back({o, m, s.bo.seed + static_cast<std::uint64_t>(i)});
    }
  std::vector<Curve> curves(tasks.size());
  parallel_for(tasks.size(), s.jobs, [&](std::size_t i) {
    const std::uint64_t seed[1] = {tasks[i].seed};
    curves[i] = assemble_explicit(tasks[i].objective, tasks[i].method, s.bench_steps, seed, bo).front();
  });

  const fs::path dir(s.out_dir);
  write_file(dir / "curves.csv", curves_to_csv(curves));
  write_file(dir / "summary.csv", summary_to_csv(curves));
  out << "wrote " << curves.size() << " curves to " << (dir / "curves.csv").string() << " and "
      << (dir / "summary.csv").string() << "\n";
  return kOk;
}

int cmd_generate(const Settings& s, std::ostream& out) {
  std::vector<ShapeInstance> instances;
  if (!s.shape_class.empty()) {
    const auto label = parse_class(s.shape_class);
    if (!label) throw Error("unknown class \"" + s.shape_class + "\"");
    instances.push_back(generate_shape(*label, s.params));
  } else {
    if (s.group.size() != 1) throw Error("give --group a|b|c or --class NAME");
    instances = generate_group(s.group[0], s.per_class);
  }
  std::string text;
  for (const auto& inst : instances) text += instance_to_json_line(inst) + "\n";
  emit(s.out_file, text, out);
  return kOk;
}

int cmd_validate(const Settings& s, std::ostream& out) {
  const auto lines = read_lines(s.in);
  std::vector<std::string> reports(lines.size());
  parallel_for(lines.size(), s.jobs, [&](std::size_t i) {
    if (lines[i].empty()) return;
    try {
      const ShapeInstance inst = instance_from_json_line(lines[i]);
      if (auto v = validate_sequence(inst.bricks))
        reports[i] = "brick " + std::to_string(v->index) + ": " + v->reason;
    } catch (const Error& e) {
      reports[i] = e.what();
    }
  });
  std::size_t invalid = 0, total = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    ++total;
    if (reports[i].empty()) continue;
    ++invalid;
    out << "line " << i + 1 << ": " << reports[i] << "\n";
  }
  out << total << " instances, " << invalid << " invalid\n";
  return invalid == 0 ? kOk : kInvalid;
}

int cmd_augment(const Settings& s, std::ostream& out) {
  std::string text;
  std::uint64_t seed = s.bo.seed;
  for (const auto& line : read_lines(s.in)) {
    if (line.empty()) continue;
    const ShapeInstance inst = instance_from_json_line(line);
    for (auto& order : augment(inst, seed++, s.count)) text += instance_to_json_line({inst.label, std::move(order)}) + "\n";
  }
  emit(s.out_file, text, out);
  return kOk;
}

int cmd_stats(const Settings& s, std::ostream& out) {
  std::vector<ShapeInstance> instances;
  for (const auto& line : read_lines(s.in))
    if (!line.empty()) instances.push_back(instance_from_json_line(line));
  emit(s.out_file, stats_to_csv(stats(instances)), out);
  return kOk;
}

int cmd_count(const Settings& s, std::ostream& out) {
  const auto conv = parse_convention(s.convention);
  if (!conv) throw Error("unknown convention \"" + s.convention + "\"");
  const CountResult r = count_combinations(s.n, *conv);
  out << r.total << "\n";
  if (s.split) {
    if (*conv != CountConvention::kAnchored || s.n != 2) throw Error("--split needs --n 2 and the anchored convention");
    out << "parallel: " << r.parallel << "\nperpendicular: " << r.perpendicular << "\n";
  }
  out << "convention: " << r.convention << "\n";
  return kOk;
}

int cmd_voxelize(const Settings& s, std::ostream& out) {
  const Combination c = combination_from_json(read_file(s.in));
  TargetShape target = TargetShape::from_combination(c);
  if (!s.extents.empty()) {
    if (s.extents.size() != 3) throw Error("--extents needs three values");
    std::vector<Cell> cells = target.cells();
    target = TargetShape({s.extents[0], s.extents[1], s.extents[2]}, cells);
  }
  emit(s.out_file, target_to_json(target), out);
  if (!s.vox.empty()) write_file(s.vox, to_voxels(c, target.extents()));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Sequential brick assembly by Bayesian optimization", "brickbo"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config;

  auto* assemble_cmd = app.add_subcommand("assemble", "Assemble bricks into a target shape");
  assemble_cmd->add_option("--target", s.target, "Target shape JSON")->required()->check(CLI::ExistingFile);
  assemble_cmd->add_option("--out", s.out_dir, "Output directory")->capture_default_str();
  assemble_cmd->add_option("--initial", s.initial, "Initial combination JSON (default: one brick at the origin)");
  assemble_cmd->add_option("--steps", s.assembly.steps, "Bricks to assemble (T)")->capture_default_str();
  assemble_cmd->add_option("--window", s.assembly.rollback_window, "Rollback window")->capture_default_str();
  assemble_cmd->add_option("--alpha", s.assembly.rollback_threshold, "Rollback threshold; 0 disables rollback")
      ->capture_default_str();
  assemble_cmd->add_option("--mode", s.mode, "Rollback rule")
      ->check(CLI::IsMember({"shortfall", "literal"}))
      ->capture_default_str();
  assemble_cmd->add_option("--max-repeats", s.assembly.max_repeats, "Visits to a step before rollback is skipped")
      ->capture_default_str();
  assemble_cmd->add_option("--perturbation", s.stability.perturbation, "COM perturbation in studs")
      ->capture_default_str();
  assemble_cmd->add_option("--w-margin", s.stability.w_margin)->capture_default_str();
  assemble_cmd->add_option("--w-disconnect", s.stability.w_disconnect)->capture_default_str();
  add_bo_options(assemble_cmd, s);

  auto* bench_cmd = app.add_subcommand("benchmark", "Explicit-function curves for bo, random, greedy and oracle");
  bench_cmd->add_option("--objective", s.objective, "height, width, depth, studs, a comma list or all")
      ->capture_default_str();
  bench_cmd->add_option("--methods", s.methods, "bo, random, greedy, oracle, a comma list or all")
      ->capture_default_str();
  bench_cmd->add_option("--steps", s.bench_steps, "Bricks per run")->capture_default_str();
  bench_cmd->add_option("--seeds", s.seeds, "Runs per method; seeds are --seed, --seed + 1, ...")
      ->capture_default_str();
  bench_cmd->add_option("--jobs", s.jobs, "Worker threads")->capture_default_str();
  bench_cmd->add_option("--out", s.out_dir, "Output directory")->capture_default_str();
  add_bo_options(bench_cmd, s);

  auto* dataset_cmd = app.add_subcommand("dataset", "Shape dataset tools");
  dataset_cmd->require_subcommand(1);
  auto* gen_cmd = dataset_cmd->add_subcommand("generate", "Write shape instances as JSON lines");
  gen_cmd->add_option("--group", s.group, "a, b or c")->check(CLI::IsMember({"a", "b", "c"}));
  gen_cmd->add_option("--per-class", s.per_class, "Instances per class for groups b and c")->capture_default_str();
  gen_cmd->add_option("--class", s.shape_class, "Generate one instance of this class");
  gen_cmd->add_option("--length", s.params.length)->capture_default_str();
  gen_cmd->add_option("--width", s.params.width)->capture_default_str();
  gen_cmd->add_option("--layers", s.params.layers)->capture_default_str();
  gen_cmd->add_option("--levels", s.params.levels)->capture_default_str();
  gen_cmd->add_option("--out", s.out_file, "Output file (default stdout)");
  auto* val_cmd = dataset_cmd->add_subcommand("validate", "Check every line for a valid assembly order");
  val_cmd->add_option("--in", s.in, "JSONL file")->required()->check(CLI::ExistingFile);
  val_cmd->add_option("--jobs", s.jobs, "Worker threads")->capture_default_str();
  auto* aug_cmd = dataset_cmd->add_subcommand("augment", "Random valid reorderings of every line");
  aug_cmd->add_option("--in", s.in, "JSONL file")->required()->check(CLI::ExistingFile);
  aug_cmd->add_option("--count", s.count, "Orders per instance")->capture_default_str();
  aug_cmd->add_option("--seed", s.bo.seed, "Random seed")->capture_default_str();
  aug_cmd->add_option("--out", s.out_file, "Output file (default stdout)");
  auto* stats_cmd = dataset_cmd->add_subcommand("stats", "Per-class brick-count statistics as CSV");
  stats_cmd->add_option("--in", s.in, "JSONL file")->required()->check(CLI::ExistingFile);
  stats_cmd->add_option("--out", s.out_file, "Output file (default stdout)");

  auto* count_cmd = app.add_subcommand("count", "Count n-brick combinations by exhaustive enumeration");
  count_cmd->add_option("--n", s.n, "2 or 3")->check(CLI::IsMember({2, 3}))->capture_default_str();
  count_cmd->add_flag("--split", s.split, "Split n = 2 by direction");
  count_cmd->add_option("--convention", s.convention, "anchored, translation or rotation")->capture_default_str();

  auto* vox_cmd = app.add_subcommand("voxelize", "Turn a combination into a target shape");
  vox_cmd->add_option("--in", s.in, "Combination, dataset line or trace JSON")->required()->check(CLI::ExistingFile);
  vox_cmd->add_option("--out", s.out_file, "Target JSON (default stdout)");
  vox_cmd->add_option("--extents", s.extents, "Grow the extents to m1 m2 m3")->expected(3);
  vox_cmd->add_option("--vox", s.vox, "Also write the occupancy grid in VOXRLE format");

  for (auto* sub : {assemble_cmd, bench_cmd, gen_cmd, val_cmd, aug_cmd, stats_cmd, count_cmd, vox_cmd})
    sub->add_option("--config", config, "JSON file whose keys mirror the flags");

  try {
    // Splice config-file values in front of the explicit flags so the flags win.
    std::vector<std::string> argv = args;
    const auto cfg_it = std::find(argv.begin(), argv.end(), "--config");
    if (cfg_it != argv.end()) {
      if (cfg_it + 1 == argv.end()) throw Error("--config needs a file");
      std::size_t depth = 0;
      const CLI::App* leaf = &app;
      while (depth < argv.size()) {
        const CLI::App* next = nullptr;
        for (const auto* sub : leaf->get_subcommands({}))
          if (sub->get_name() == argv[depth]) next = sub;
        if (!next) break;
        leaf = next;
        ++depth;
      }
      if (leaf == &app) throw Error("--config comes after a subcommand");
      const auto tokens = config_tokens(*(cfg_it + 1), leaf);
      argv.insert(argv.begin() + static_cast<std::ptrdiff_t>(depth), tokens.begin(), tokens.end());
    }
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (assemble_cmd->parsed()) {
      if (s.assembly.steps < 1) throw Error("--steps must be >= 1");
      return cmd_assemble(s, out);
    }
    if (bench_cmd->parsed()) return cmd_benchmark(s, out);
    if (gen_cmd->parsed()) return cmd_generate(s, out);
    if (val_cmd->parsed()) return cmd_validate(s, out);
    if (aug_cmd->parsed()) return cmd_augment(s, out);
    if (stats_cmd->parsed()) return cmd_stats(s, out);
    if (count_cmd->parsed()) return cmd_count(s, out);
    if (vox_cmd->parsed()) return cmd_voxelize(s, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace brickbo::cli
