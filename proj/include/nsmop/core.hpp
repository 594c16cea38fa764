#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace nsmop {

using Vector = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Raised when the caller breaks a documented precondition, e.g. handing
/// armijo_step a direction that does not give sufficient decrease.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Oracles and problems
// ---------------------------------------------------------------------------

struct Box {
  Vector lower;
  Vector upper;
};

/// One objective f_i with a value oracle and a single-subgradient oracle.
///
/// Every call through value() or subgradient() is counted. The counters are
/// atomics, so totals stay exact when several solver runs share one instance;
/// per-run attribution needs separate instances (see Problem::clone).
class ObjectiveOracle {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using SubgradFn = std::function<Vector(const Vector&)>;

  ObjectiveOracle(std::string name, ValueFn value_fn, SubgradFn subgrad_fn);

  ObjectiveOracle(ObjectiveOracle&&) noexcept = default;
  ObjectiveOracle& operator=(ObjectiveOracle&&) noexcept = default;
  ObjectiveOracle(const ObjectiveOracle&) = delete;
  ObjectiveOracle& operator=(const ObjectiveOracle&) = delete;

  /// Throws NonFiniteError if x or the result is not finite.
  double value(const Vector& x) const;

  /// Returns one element of the Clarke subdifferential at x.
  Vector subgradient(const Vector& x) const;

  const std::string& name() const { return name_; }
  std::uint64_t value_count() const { return counters_->values.load(std::memory_order_relaxed); }
  std::uint64_t subgrad_count() const {
    return counters_->subgrads.load(std::memory_order_relaxed);
  }

  /// Same functions, counters at zero.
  ObjectiveOracle fresh_copy() const;

 private:
  struct Functions {
    ValueFn value;
    SubgradFn subgrad;
  };
  struct Counters {
    std::atomic<std::uint64_t> values{0};
    std::atomic<std::uint64_t> subgrads{0};
  };

  ObjectiveOracle(std::string name, std::shared_ptr<const Functions> fns);

  std::string name_;
  std::shared_ptr<const Functions> fns_;
  std::unique_ptr<Counters> counters_;
};

struct CounterSnapshot {
  std::uint64_t value_evals = 0;
  std::uint64_t subgrad_evals = 0;
  std::uint64_t outer_iterations = 0;

  CounterSnapshot operator-(const CounterSnapshot& rhs) const;
  CounterSnapshot& operator+=(const CounterSnapshot& rhs);
  bool operator==(const CounterSnapshot&) const = default;
};

/// k objectives over R^n. Dimension and objective count are validated once
/// here; downstream code relies on them.
class Problem {
 public:
  Problem(std::string name, std::size_t dimension, std::vector<ObjectiveOracle> objectives,
          std::optional<Box> benchmark_box = std::nullopt);

  Problem(Problem&&) noexcept = default;
  Problem& operator=(Problem&&) noexcept = default;

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t num_objectives() const { return objectives_.size(); }
  const ObjectiveOracle& objective(std::size_t i) const { return objectives_.at(i); }
  const std::optional<Box>& benchmark_box() const { return box_; }

  /// Full objective vector; counts k value evaluations.
  Vector values(const Vector& x) const;

  /// Throws DimensionError / NonFiniteError on a malformed point.
  void check_point(const Vector& x) const;

  /// Counter totals over all objectives. outer_iterations is always 0 here;
  /// solver runs fill it in.
  CounterSnapshot snapshot_counters() const;

  /// Shares the objective functions, starts from zeroed counters.
  Problem clone() const;

 private:
  std::string name_;
  std::size_t dimension_;
  std::vector<ObjectiveOracle> objectives_;
  std::optional<Box> box_;
};

inline CounterSnapshot snapshot_counters(const Problem& problem) {
  return problem.snapshot_counters();
}

/// Pareto dominance on objective vectors: a <= b everywhere and a < b somewhere.
bool dominates(const Vector& a, const Vector& b);

bool all_finite(const Vector& x);

// ---------------------------------------------------------------------------
// Solver configuration
// ---------------------------------------------------------------------------

struct FixedStep {
  double t0 = 1.0;
};
/// t0 = max(1/||v||, 1), re-evaluated every outer iteration.
struct AdaptiveStep {};
using StepMode = std::variant<FixedStep, AdaptiveStep>;

struct SolverConfig {
  double epsilon = 1e-3;
  double delta = 1e-3;
  double armijo_c = 0.25;
  StepMode t0_mode = AdaptiveStep{};
  int max_outer_iterations = 10000;
  int max_direction_iterations = 200;
  int max_bisection_iterations = 64;
  int max_armijo_halvings = 30;
  std::vector<double> epsilon_schedule;  // empty: single epsilon

  double qp_tolerance = 1e-12;
  /// Enrich with a subgradient for the first violating objective only,
  /// instead of one per violating objective.
  bool single_index_enrichment = false;
  /// Keep only the final iterate in SolverRun (used by the descent map).
  bool store_history = true;
  /// Decrease of every objective beyond which a run that hit the iteration
  /// guard is reported as unbounded_suspected.
  double unbounded_threshold = 1e6;

  /// Throws ConfigError.
  void validate() const;
};

double initial_step(const StepMode& mode, double direction_norm);

}  // namespace nsmop
