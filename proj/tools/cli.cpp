#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <graphflow/analysis.hpp>
#include <graphflow/checks.hpp>
#include <graphflow/errors.hpp>
#include <graphflow/io.hpp>
#include <graphflow/scheme.hpp>

namespace graphflow::cli {

namespace {

const char* const kKnownKeys[] = {"problem", "level", "levels", "T", "tau", "out", "tol", "ic2-variant"};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw UsageError("invalid number for " + key + ": '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("invalid integer for " + key + ": '" + text + "'");
  return v;
}

void check_level(int level) {
  if (level < 0 || level > kMaxDiskLevel) {
    throw UsageError("level " + std::to_string(level) + " outside 0.." + std::to_string(kMaxDiskLevel));
  }
}

struct RawOptions {
  std::optional<std::string> problem, level, levels, final_time, tau, out, tol, ic2, config;
};

RunConfig resolve(const std::string& command, const RawOptions& raw) {
  std::map<std::string, std::string> file;
  if (raw.config) {
    std::ifstream in(*raw.config);
    if (!in) throw UsageError("cannot read config file '" + *raw.config + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    file = parse_config_text(buffer.str());
  }
  auto pick = [&](const std::optional<std::string>& flag, const std::string& key) -> std::optional<std::string> {
    if (flag) return flag;
    if (auto it = file.find(key); it != file.end()) return it->second;
    return std::nullopt;
  };

  RunConfig c;
  c.command = command;
  if (const char* env = std::getenv("GRAPHFLOW_OUT"); env && *env) c.out = env;

  if (auto v = pick(raw.problem, "problem")) c.problem = *v;
  if (auto v = pick(raw.level, "level")) c.level = parse_int("level", *v);
  if (auto v = pick(raw.levels, "levels")) c.levels = parse_level_range(*v);
  if (auto v = pick(raw.final_time, "T")) {
    c.final_time = parse_real("T", *v);
    if (*c.final_time < 0.0) throw UsageError("T must be nonnegative");
  }
  if (auto v = pick(raw.tau, "tau"); v && *v != "h2") {
    c.tau = parse_real("tau", *v);
    if (!(*c.tau > 0.0)) throw UsageError("tau must be positive or 'h2'");
  }
  if (auto v = pick(raw.out, "out")) c.out = *v;
  if (auto v = pick(raw.tol, "tol")) {
    c.tolerance = parse_real("tol", *v);
    if (!(c.tolerance > 0.0)) throw UsageError("tol must be positive");
  }
  if (auto v = pick(raw.ic2, "ic2-variant")) {
    try {
      c.ic2 = parse_ic2_variant(*v);
    } catch (const ArgumentError& e) {
      throw UsageError(e.what());
    }
  }

  const auto& keys = problem_keys();
  if (std::find(keys.begin(), keys.end(), c.problem) == keys.end()) {
    throw UsageError("unknown problem '" + c.problem + "'");
  }
  check_level(c.level);
  check_level(c.levels.first);
  check_level(c.levels.second);
  return c;
}

std::string padded(int m) {
  std::string s = std::to_string(m);
  return std::string(s.size() < 5 ? 5 - s.size() : 0, '0') + s;
}

int converge(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (!make_problem(c.problem, c.ic2).exact) {
    throw UsageError("converge needs a problem with an exact solution (example1, example2)");
  }
  std::vector<int> levels;
  for (int l = c.levels.first; l <= c.levels.second; ++l) levels.push_back(l);

  StudyOptions options;
  options.fixed_tau = c.tau;
  options.final_time = c.final_time;
  options.solver_tolerance = c.tolerance;
  options.ic2 = c.ic2;
  const auto reports = convergence_study(c.problem, levels, options, [&](const ErrorReport& r) {
    err << "level " << r.level << (r.ok() ? " done" : " failed: " + r.failure) << '\n';
  });

  const std::string csv = format_csv(reports);
  out << csv;
  std::filesystem::create_directories(c.out);
  const auto path = c.out / ("convergence_" + c.problem + ".csv");
  std::ofstream file(path);
  if (!(file << csv)) throw IoError("cannot write " + path.string());

  for (const auto& r : reports) {
    if (!r.ok()) return kNumericalFailure;
  }
  return kSuccess;
}

int run_single(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ProblemSpec problem = make_problem(c.problem, c.ic2);
  auto mesh = std::make_shared<const Mesh>(make_mesh(problem, c.level));
  auto space = std::make_shared<const FeSpace>(mesh);

  SchemeConfig config;
  config.tau = c.tau.value_or(mesh->h_max * mesh->h_max);
  config.final_time = c.final_time.value_or(problem.final_time);
  config.solver_tolerance = c.tolerance;
  const int steps = num_steps(config);

  std::filesystem::create_directories(c.out);
  std::vector<TimeseriesRecord> records;
  int snapshots = 0;
  try {
    run(problem, space, config, {[&](const State& s) {
          records.push_back(TimeseriesRecord::of(s));
          if (is_snapshot_level(s.m, steps)) {
            write_surface_vtk(Snapshot::of(s), c.out / (c.problem + "_" + padded(s.m) + ".vtk"));
            ++snapshots;
          }
        }});
  } catch (const SchemeError& e) {
    err << "numerical failure at time level " << e.time_level() << ": " << e.what() << '\n';
    write_timeseries_csv(records, c.out / (c.problem + "_timeseries.csv"));
    return kNumericalFailure;
  }
  write_timeseries_csv(records, c.out / (c.problem + "_timeseries.csv"));
  out << c.problem << ": " << steps << " steps, h = " << mesh->h_max << ", tau = " << config.tau << ", "
      << snapshots << " snapshots in " << c.out.string() << '\n';
  return kSuccess;
}

int check(std::ostream& out) {
  int passed = 0, failed = 0;
  for (const auto& r : run_invariant_checks()) {
    (r.passed ? passed : failed)++;
    out << (r.passed ? "PASS " : "FAIL ") << r.module << ": " << r.name;
    if (!r.detail.empty()) out << " (" << r.detail << ')';
    out << '\n';
  }
  out << passed << " passed, " << failed << " failed\n";
  return failed == 0 ? kSuccess : kNumericalFailure;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> values;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys)) {
      throw UsageError("config line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
    if (value.empty()) throw UsageError("config line " + std::to_string(number) + ": empty value for " + key);
    values[key] = value;
  }
  return values;
}

std::pair<int, int> parse_level_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("level range must be a:b, got '" + text + "'");
  const int a = parse_int("levels", text.substr(0, colon));
  const int b = parse_int("levels", text.substr(colon + 1));
  if (a > b) throw UsageError("empty level range '" + text + "'");
  return {a, b};
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forced mean curvature flow of a graph coupled to surface diffusion"};
  app.name("graphflow");
  app.require_subcommand(1);

  RawOptions raw;
  auto add_common = [&raw](CLI::App* sub) {
    sub->add_option("--problem", raw.problem, "example1 | example2 | contact-angle | digm-planar | digm-wave");
    sub->add_option("--T", raw.final_time, "final time (default: problem's own)");
    sub->add_option("--tau", raw.tau, "time step: h2 or a positive value");
    sub->add_option("--out", raw.out, "output directory (default $GRAPHFLOW_OUT or graphflow-out)");
    sub->add_option("--tol", raw.tol, "relative residual tolerance of the linear solver");
    sub->add_option("--ic2-variant", raw.ic2, "literal | continuous");
    sub->add_option("--config", raw.config, "file of key = value lines");
  };

  CLI::App* converge_cmd = app.add_subcommand("converge", "convergence study against an exact solution");
  add_common(converge_cmd);
  converge_cmd->add_option("--levels", raw.levels, "inclusive level range a:b");

  CLI::App* run_cmd = app.add_subcommand("run", "single simulation with VTK snapshots and a timeseries CSV");
  add_common(run_cmd);
  run_cmd->add_option("--level", raw.level, "mesh refinement level");

  app.add_subcommand("check", "invariant suites of all modules");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsageError;
  }

  try {
    if (app.got_subcommand("check")) return check(out);
    const std::string command = app.got_subcommand("converge") ? "converge" : "run";
    const RunConfig config = resolve(command, raw);
    return command == "converge" ? converge(config, out, err) : run_single(config, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsageError;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace graphflow::cli
