#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsmop/core.hpp"
#include "nsmop/descent.hpp"

namespace nsmop::cli {

enum ExitCode : int { kSuccess = 0, kSolverFailure = 1, kUsageError = 2 };

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

/// Stable 64-bit FNV-1a digest of the canonical config text, as 16 hex digits.
std::string config_digest(const SolverConfig& config);
nlohmann::json config_to_json(const SolverConfig& config);

struct RunRecord {
  std::string problem;
  Vector start;
  std::string config_digest;
  StopReason stop_reason = StopReason::max_iterations;
  Vector final_point;
  Vector final_values;
  CounterSnapshot counters;

  nlohmann::json to_json() const;
};

RunRecord make_record(const std::string& problem, const Vector& start, const SolverConfig& config,
                      const SolverRun& run);

struct ConfigOptions {
  double eps = 1e-3;
  double delta = 1e-3;
  double c = 0.25;
  std::string t0 = "adaptive";
  std::vector<double> eps_schedule;
  int max_iter = 10000;

  /// Throws ConfigError on a malformed --t0.
  SolverConfig to_config() const;
};

struct SolveOptions {
  std::string problem;
  std::vector<double> start;
  ConfigOptions config;
  std::string out = ".";
};

struct BenchOptions {
  std::string problems = "all";  // "all" or comma-separated selectors
  std::string mode = "single-eps";  // single-eps | eps-decreasing | both
  ConfigOptions config;
  std::string out = ".";
  int grid = 10;
};

struct ParetoOptions {
  std::string problem = "16";
  std::vector<double> root{-3.1, 3.0};
  int subdiv_iters = 9;
  int inner_m = 15;
  int samples_per_axis = 5;
  ConfigOptions config;
  std::string out = ".";
};

/// Reference iteration totals for the 100-start grid per problem, used for
/// the order-of-magnitude band check of cmd_bench.
const std::vector<int>& reference_iterations_single_eps();
const std::vector<int>& reference_iterations_eps_decreasing();

// Each command writes its files under `out`, reports to `log`, and returns
// an ExitCode.
int cmd_solve(const SolveOptions& opts, std::ostream& log);
int cmd_bench(const BenchOptions& opts, std::ostream& log);
int cmd_pareto(const ParetoOptions& opts, std::ostream& log);
int cmd_catalog(const std::string& out_file, std::ostream& log);
int cmd_validate(std::ostream& log);

/// Parses argv and dispatches to a command.
int run(int argc, char** argv);

}  // namespace nsmop::cli
