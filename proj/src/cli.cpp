#include "nsmop/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nsmop/parallel.hpp"
#include "nsmop/problems.hpp"
#include "nsmop/subdivision.hpp"
#include "nsmop/validation.hpp"

namespace nsmop::cli {

namespace fs = std::filesystem;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

nlohmann::json vec_json(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

std::string t0_text(const StepMode& mode) {
  if (const auto* f = std::get_if<FixedStep>(&mode)) return format_double(f->t0);
  return "adaptive";
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream os(fs::path(dir) / name, std::ios::binary);
  if (!os) throw Error("cannot write " + (fs::path(dir) / name).string());
  return os;
}

void write_vec(std::ostream& os, const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) os << ',' << format_double(v[i]);
}

std::string numbered(const std::string& prefix, std::size_t count) {
  std::string s;
  for (std::size_t i = 1; i <= count; ++i) s += "," + prefix + std::to_string(i);
  return s;
}

Vector to_vector(const std::vector<double>& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace

nlohmann::json config_to_json(const SolverConfig& c) {
  // Keys are emitted in sorted order by nlohmann::json, which keeps the
  // canonical text stable.
  nlohmann::json j;
  j["epsilon"] = format_double(c.epsilon);
  j["delta"] = format_double(c.delta);
  j["armijo_c"] = format_double(c.armijo_c);
  j["t0"] = t0_text(c.t0_mode);
  j["max_outer_iterations"] = c.max_outer_iterations;
  j["max_direction_iterations"] = c.max_direction_iterations;
  j["max_bisection_iterations"] = c.max_bisection_iterations;
  j["max_armijo_halvings"] = c.max_armijo_halvings;
  nlohmann::json sched = nlohmann::json::array();
  for (double e : c.epsilon_schedule) sched.push_back(format_double(e));
  j["epsilon_schedule"] = sched;
  j["qp_tolerance"] = format_double(c.qp_tolerance);
  j["single_index_enrichment"] = c.single_index_enrichment;
  return j;
}

std::string config_digest(const SolverConfig& config) {
  const std::string text = config_to_json(config).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

nlohmann::json RunRecord::to_json() const {
  nlohmann::json j;
  j["problem"] = problem;
  j["start"] = vec_json(start);
  j["config_digest"] = config_digest;
  j["stop_reason"] = std::string(to_string(stop_reason));
  j["final_point"] = vec_json(final_point);
  j["final_values"] = vec_json(final_values);
  j["counters"] = {{"value_evals", counters.value_evals},
                   {"subgrad_evals", counters.subgrad_evals},
                   {"outer_iterations", counters.outer_iterations}};
  return j;
}

RunRecord make_record(const std::string& problem, const Vector& start, const SolverConfig& config,
                      const SolverRun& run) {
  return {problem,          start,           config_digest(config), run.stop_reason,
          run.final_point, run.final_values, run.counters};
}

SolverConfig ConfigOptions::to_config() const {
  SolverConfig c;
  c.epsilon = eps;
  c.delta = delta;
  c.armijo_c = this->c;
  if (t0 == "adaptive") {
    c.t0_mode = AdaptiveStep{};
  } else {
    double v = 0.0;
    const auto res = std::from_chars(t0.data(), t0.data() + t0.size(), v);
    if (res.ec != std::errc() || res.ptr != t0.data() + t0.size()) {
      throw UsageError("--t0 expects 'adaptive' or a positive number, got '" + t0 + "'");
    }
    c.t0_mode = FixedStep{v};
  }
  c.epsilon_schedule = eps_schedule;
  c.max_outer_iterations = max_iter;
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return c;
}

const std::vector<int>& reference_iterations_single_eps() {
  static const std::vector<int> v{492,  842, 448,  4644, 1616, 552, 595, 582,  536,
                                  543, 2442, 967, 1692, 4379, 3963, 1194, 626, 8291};
  return v;
}

const std::vector<int>& reference_iterations_eps_decreasing() {
  static const std::vector<int> v{695, 914,  662,  1242, 1161, 736, 739, 759, 732,
                                  733, 1206, 1010, 787,  921,  1125, 947, 706, 2412};
  return v;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

int cmd_solve(const SolveOptions& opts, std::ostream& log) {
  const Problem problem = problems::make_problem(opts.problem);
  const SolverConfig config = opts.config.to_config();
  const Vector start = to_vector(opts.start);
  if (static_cast<std::size_t>(start.size()) != problem.dimension()) {
    throw UsageError("--start has " + std::to_string(start.size()) + " coordinates, problem '" +
                     opts.problem + "' needs " + std::to_string(problem.dimension()));
  }

  const std::size_t n = problem.dimension();
  const std::size_t k = problem.num_objectives();
  std::ostringstream trace;
  trace << "j" << numbered("x", n) << numbered("f", k) << ",v_norm,step,epsilon\n";
  // Observer events arrive in order; stage epsilon is recovered from the
  // configured schedule by counting critical events.
  std::size_t stage = 0;
  auto stage_eps = [&] {
    return config.epsilon_schedule.empty() ? config.epsilon
                                           : config.epsilon_schedule.at(stage);
  };
  std::size_t row = 0;
  const SolverRun run = run_solver(problem, start, config, [&](const IterationEvent& ev) {
    trace << ++row;
    write_vec(trace, *ev.x);
    write_vec(trace, ev.direction->fx);
    trace << ',' << format_double(ev.direction->v.norm()) << ',';
    if (ev.step) trace << format_double(ev.step->step);
    trace << ',' << format_double(stage_eps()) << '\n';
    if (!ev.step) ++stage;
  });

  {
    auto os = open_out(opts.out, "trace.csv");
    os << trace.str();
  }
  const RunRecord rec = make_record(problem.name(), start, config, run);
  nlohmann::json j = rec.to_json();
  j["config"] = config_to_json(config);
  {
    auto os = open_out(opts.out, "run.json");
    os << j.dump(2) << '\n';
  }
  log << problem.name() << ": " << to_string(run.stop_reason) << " after "
      << run.counters.outer_iterations << " iterations, final point (";
  for (Eigen::Index i = 0; i < run.final_point.size(); ++i) {
    log << (i ? ", " : "") << format_double(run.final_point[i]);
  }
  log << ")\n";
  return run.stop_reason == StopReason::critical ? kSuccess : kSolverFailure;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

namespace {

std::vector<int> bench_selection(const std::string& sel) {
  std::vector<int> out;
  if (sel == "all") {
    for (int i = 1; i <= 18; ++i) out.push_back(i);
    return out;
  }
  std::stringstream ss(sel);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.rfind("table1-", 0) == 0) tok = tok.substr(7);
    int v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || v < 1 || v > 18) {
      throw UsageError("--problem for bench expects 'all' or numbers 1..18, got '" + tok + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--problem selects no benchmark problem");
  return out;
}

}  // namespace

int cmd_bench(const BenchOptions& opts, std::ostream& log) {
  const std::vector<int> numbers = bench_selection(opts.problems);
  std::vector<std::string> modes;
  if (opts.mode == "single-eps" || opts.mode == "both") modes.emplace_back("single-eps");
  if (opts.mode == "eps-decreasing" || opts.mode == "both") modes.emplace_back("eps-decreasing");
  if (modes.empty()) throw UsageError("--mode must be single-eps, eps-decreasing or both");

  std::ostringstream agg;
  std::ostringstream runs;
  std::ostringstream report;
  agg << "problem,fi_evals,subgrad_evals,iterations,mode\n";
  runs << "problem,mode,start_index,x1,x2,stop_reason,fi_evals,subgrad_evals,iterations,"
          "final_x1,final_x2,f1,f2,error\n";
  report << "problem,mode,iterations,reference_iterations,ratio,in_band,critical_runs,runs\n";
  bool failed = false;
  int out_of_band = 0;

  for (const std::string& mode : modes) {
    SolverConfig config = opts.config.to_config();
    if (mode == "single-eps") {
      config.epsilon_schedule.clear();
    } else if (config.epsilon_schedule.empty()) {
      config.epsilon_schedule = {1e-1, 1e-2, 1e-3};
    }
    const auto& reference = mode == "single-eps" ? reference_iterations_single_eps()
                                                 : reference_iterations_eps_decreasing();
    for (int number : numbers) {
      const problems::CatalogEntry entry = problems::table1_entry(number);
      const auto starts = problems::grid_points(*entry.problem.benchmark_box(), opts.grid);
      const BatchResult batch = solve_batch(entry.problem, starts, config);
      CounterSnapshot total;
      int critical = 0;
      for (std::size_t i = 0; i < starts.size(); ++i) {
        runs << number << ',' << mode << ',' << i;
        write_vec(runs, starts[i]);
        if (const auto& r = batch.runs[i]) {
          total += r->counters;
          if (r->stop_reason == StopReason::critical) ++critical;
          runs << ',' << to_string(r->stop_reason) << ',' << r->counters.value_evals << ','
               << r->counters.subgrad_evals << ',' << r->counters.outer_iterations;
          write_vec(runs, r->final_point);
          write_vec(runs, r->final_values);
          runs << ",\n";
        } else {
          std::string err = batch.errors[i];
          for (char& ch : err) {
            if (ch == ',' || ch == '\n') ch = ';';
          }
          runs << ",error,,,,,,,," << err << '\n';
        }
      }
      if (!batch.all_succeeded()) {
        failed = true;
        log << "problem " << number << " (" << mode << "): hard failure, aborting\n";
        break;
      }
      agg << number << ',' << total.value_evals << ',' << total.subgrad_evals << ','
          << total.outer_iterations << ',' << mode << '\n';
      const int ref = reference.at(static_cast<std::size_t>(number - 1));
      const double ratio = static_cast<double>(total.outer_iterations) / ref;
      const bool in_band = ratio >= 0.1 && ratio <= 10.0;
      if (!in_band) ++out_of_band;
      report << number << ',' << mode << ',' << total.outer_iterations << ',' << ref << ','
             << format_double(ratio) << ',' << (in_band ? 1 : 0) << ',' << critical << ','
             << starts.size() << '\n';
      log << "problem " << std::setw(2) << number << " [" << entry.slug << "] " << mode
          << ": #f_i " << total.value_evals << ", #subgrad " << total.subgrad_evals << ", #iter "
          << total.outer_iterations << " (reference " << ref << (in_band ? "" : ", OUT OF BAND")
          << "), critical " << critical << "/" << starts.size() << '\n';
    }
    if (failed) break;
  }

  {
    auto os = open_out(opts.out, "bench_runs.csv");
    os << runs.str();
  }
  {
    auto os = open_out(opts.out, failed ? "bench_partial.csv" : "bench.csv");
    os << agg.str();
  }
  {
    auto os = open_out(opts.out, "bench_report.csv");
    os << report.str();
  }
  if (out_of_band > 0) log << out_of_band << " problem(s) outside the reference band; review\n";
  return failed ? kSolverFailure : kSuccess;
}

// ---------------------------------------------------------------------------
// pareto
// ---------------------------------------------------------------------------

int cmd_pareto(const ParetoOptions& opts, std::ostream& log) {
  const Problem problem = problems::make_problem(opts.problem);
  const SolverConfig config = opts.config.to_config();
  const auto n = static_cast<Eigen::Index>(problem.dimension());
  nsmop::Box bounds{Vector(n), Vector(n)};
  if (opts.root.size() == 2) {
    bounds.lower.setConstant(opts.root[0]);
    bounds.upper.setConstant(opts.root[1]);
  } else if (opts.root.size() == static_cast<std::size_t>(2 * n)) {
    for (Eigen::Index i = 0; i < n; ++i) {
      bounds.lower[i] = opts.root[static_cast<std::size_t>(2 * i)];
      bounds.upper[i] = opts.root[static_cast<std::size_t>(2 * i + 1)];
    }
  } else {
    throw UsageError("--root expects lo,hi or lo1,hi1,...,lon,hin");
  }
  if (!(bounds.lower.array() < bounds.upper.array()).all()) {
    throw UsageError("--root needs lo < hi on every axis");
  }
  if (opts.subdiv_iters < 0 || opts.inner_m < 1 || opts.samples_per_axis < 1) {
    throw UsageError("--subdiv-iters >= 0, --inner-m >= 1 and --samples-per-axis >= 1 required");
  }

  subdivision::ParetoCover cover;
  try {
    cover = subdivision::pareto_cover(problem, config, subdivision::from_bounds(bounds),
                                      opts.subdiv_iters, opts.inner_m, opts.samples_per_axis);
  } catch (const Error& e) {
    log << "pareto: " << e.what() << '\n';
    return kSolverFailure;
  }
  if (cover.escaped > 0) {
    log << "warning: " << cover.escaped << " image point(s) left the root box\n";
  }
  if (cover.uncovered > 0) {
    log << "warning: " << cover.uncovered
        << " final image point(s) fell into cells removed by an earlier selection\n";
  }

  const std::size_t dim = problem.dimension();
  const std::size_t k = problem.num_objectives();
  {
    auto os = open_out(opts.out, "boxes.csv");
    os << "index" << numbered("c", dim) << numbered("r", dim) << ",depth\n";
    for (std::size_t i = 0; i < cover.collection.boxes.size(); ++i) {
      const auto& b = cover.collection.boxes[i];
      os << i;
      write_vec(os, b.center);
      write_vec(os, b.radii);
      os << ',' << b.depth << '\n';
    }
  }
  std::size_t front_size = 0;
  {
    auto os = open_out(opts.out, "front.csv");
    os << "index" << numbered("x", dim) << numbered("f", k) << ",nondominated\n";
    for (std::size_t i = 0; i < cover.images.size(); ++i) {
      os << i;
      write_vec(os, cover.images[i]);
      write_vec(os, cover.image_values[i]);
      os << ',' << (cover.front[i] ? 1 : 0) << '\n';
      if (cover.front[i]) ++front_size;
    }
  }
  log << problem.name() << ": " << cover.collection.boxes.size() << " boxes after "
      << opts.subdiv_iters << " subdivision steps, " << cover.images.size() << " image points, "
      << front_size << " non-dominated\n";
  return kSuccess;
}

// ---------------------------------------------------------------------------
// catalog / validate
// ---------------------------------------------------------------------------

int cmd_catalog(const std::string& out_file, std::ostream& log) {
  nlohmann::json list = nlohmann::json::array();
  auto box_json = [](const std::optional<nsmop::Box>& b) -> nlohmann::json {
    if (!b) return nullptr;
    return {{"lower", vec_json(b->lower)}, {"upper", vec_json(b->upper)}};
  };
  for (const char* name : {"example-2-5", "example-3-8", "crescent-mifflin2"}) {
    const Problem p = problems::make_problem(name);
    list.push_back({{"name", name},
                    {"k", p.num_objectives()},
                    {"n", p.dimension()},
                    {"box", box_json(p.benchmark_box())}});
  }
  for (const auto& e : problems::table1_suite()) {
    list.push_back({{"name", std::to_string(e.number)},
                    {"number", e.number},
                    {"slug", e.slug},
                    {"objectives", {e.components[0].name, e.components[1].name}},
                    {"k", e.problem.num_objectives()},
                    {"n", e.problem.dimension()},
                    {"box", box_json(e.problem.benchmark_box())},
                    {"literature", e.literature}});
  }
  const std::string text = list.dump(2) + "\n";
  if (out_file.empty() || out_file == "-") {
    log << text;
  } else {
    std::ofstream os(out_file, std::ios::binary);
    if (!os) throw Error("cannot write " + out_file);
    os << text;
  }
  return kSuccess;
}

int cmd_validate(std::ostream& log) {
  Vector x(2);
  bool ok = true;
  auto check = [&](const char* label, double got, double want, double tol) {
    const bool pass = std::abs(got - want) <= tol;
    ok = ok && pass;
    log << (pass ? "PASS " : "FAIL ") << label << ": " << format_double(got) << " (expected "
        << format_double(want) << " +- " << format_double(tol) << ")\n";
  };
  x << 1.5, 0.0;
  const auto clarke =
      validation::exact_min_norm_over_hull(validation::example_2_5_subdifferentials(x, 0.0));
  check("min-norm^2, Clarke, x=(1.5,0)", clarke.midpoint_sq(), 3.7692, 1e-2);
  const auto goldstein =
      validation::exact_min_norm_over_hull(validation::example_2_5_subdifferentials(x, 0.2));
  check("min-norm^2, eps=0.2, x=(1.5,0)", goldstein.midpoint_sq(), 2.4433, 1e-2);
  x << 0.5, 0.0;
  const auto critical =
      validation::exact_min_norm_over_hull(validation::example_2_5_subdifferentials(x, 0.2));
  check("min-norm, eps=0.2, x=(0.5,0)", critical.midpoint(), 0.0, 1e-6);
  return ok ? kSuccess : kSolverFailure;
}

// ---------------------------------------------------------------------------
// argv
// ---------------------------------------------------------------------------

namespace {

void add_config_flags(CLI::App* app, ConfigOptions& c) {
  app->add_option("--eps", c.eps, "Radius of the epsilon-subdifferential");
  app->add_option("--delta", c.delta, "Criticality threshold on ||v||");
  app->add_option("--c", c.c, "Armijo constant in (0,1)");
  app->add_option("--t0", c.t0, "Initial step: 'adaptive' or a positive number");
  app->add_option("--eps-schedule", c.eps_schedule, "Decreasing epsilons, e.g. 1e-1,1e-2,1e-3")
      ->delimiter(',');
  app->add_option("--max-iter", c.max_iter, "Outer iteration guard per epsilon stage");
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Descent solver for nonsmooth multiobjective problems"};
  app.require_subcommand(1);

  SolveOptions solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Run the descent method from one start point");
  solve_cmd->add_option("--problem", solve_opts.problem, "Problem selector")->required();
  solve_cmd->add_option("--start", solve_opts.start, "Start point, comma separated")
      ->required()
      ->delimiter(',')
      ->allow_extra_args(false);
  add_config_flags(solve_cmd, solve_opts.config);
  solve_cmd->add_option("--out", solve_opts.out, "Output directory");

  BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Run the 10x10 start grid of benchmark problems");
  bench_cmd->add_option("--problem", bench_opts.problems, "'all' or comma-separated numbers");
  bench_cmd->add_option("--mode", bench_opts.mode, "single-eps | eps-decreasing | both");
  add_config_flags(bench_cmd, bench_opts.config);
  bench_cmd->add_option("--out", bench_opts.out, "Output directory");

  ParetoOptions pareto_opts;
  auto* pareto_cmd = app.add_subcommand("pareto", "Cover the Pareto set by box subdivision");
  pareto_cmd->add_option("--problem", pareto_opts.problem, "Problem selector");
  pareto_cmd->add_option("--root", pareto_opts.root, "Root box: lo,hi or lo1,hi1,lo2,hi2")
      ->delimiter(',');
  pareto_cmd->add_option("--subdiv-iters", pareto_opts.subdiv_iters, "Subdivision steps");
  pareto_cmd->add_option("--inner-m", pareto_opts.inner_m, "Descent iterations inside g");
  pareto_cmd->add_option("--samples-per-axis", pareto_opts.samples_per_axis,
                         "Sample lattice size per box axis");
  add_config_flags(pareto_cmd, pareto_opts.config);
  pareto_cmd->add_option("--out", pareto_opts.out, "Output directory");

  std::string catalog_out;
  auto* catalog_cmd = app.add_subcommand("catalog", "List shipped problems as JSON");
  catalog_cmd->add_option("--out", catalog_out, "Output file (default: stdout)");

  auto* validate_cmd = app.add_subcommand("validate", "");  // hidden: empty description
  validate_cmd->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_opts, std::cout);
    if (*bench_cmd) return cmd_bench(bench_opts, std::cout);
    if (*pareto_cmd) return cmd_pareto(pareto_opts, std::cout);
    if (*catalog_cmd) return cmd_catalog(catalog_out, std::cout);
    if (*validate_cmd) return cmd_validate(std::cout);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    const std::string msg = e.what();
    // Unknown problem names are a usage problem, not a solver failure.
    if (msg.rfind("unknown problem", 0) == 0) {
      std::cerr << "usage error: " << msg << '\n';
      return kUsageError;
    }
    std::cerr << "error: " << msg << '\n';
    return kSolverFailure;
  }
  return kUsageError;
}

}  // namespace nsmop::cli
