#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "nsmop/core.hpp"
#include "nsmop/direction.hpp"

namespace nsmop {

enum class StopReason { critical, max_iterations, unbounded_suspected };

std::string_view to_string(StopReason reason);

struct ArmijoResult {
  double step = 0.0;
  /// Smallest s tried that passed, or the last s probed before the floor took over.
  int halvings = 0;
  bool used_floor = false;
  /// f(x + step v).
  Vector f_new;
};

struct ArmijoHint {
  std::optional<Vector> fx;           // f(x)
  std::optional<Vector> f_at_radius;  // f(x + (eps/||v||) v)
};

/// Dyadic backtracking from t0 with the floor step eps/||v||:
/// step = max(2^-s t0, eps/||v||), s the first exponent with sufficient
/// decrease in every objective. Throws ContractViolation if even the floor
/// step fails (v was not an acceptable direction).
ArmijoResult armijo_step(const Problem& problem, const Vector& x, const Vector& v, double epsilon,
                         double c, double t0, int max_armijo_halvings,
                         const ArmijoHint& hint = {});

struct SolverRun {
  std::vector<Vector> iterates;
  /// Objective vector at each stored iterate.
  std::vector<Vector> values;
  /// One per direction computation, including a final critical one.
  std::vector<Vector> directions;
  std::vector<double> direction_norms;
  std::vector<double> step_lengths;
  StopReason stop_reason = StopReason::max_iterations;
  CounterSnapshot counters;

  /// Index into `iterates` where each epsilon stage starts (size 1 for a
  /// plain solve). Only meaningful with full history.
  std::vector<std::size_t> stage_starts;
  std::vector<StopReason> stage_stop_reasons;

  Vector final_point;
  Vector final_values;
};

struct IterationEvent {
  std::size_t iteration = 0;  // 1-based outer iteration
  const Vector* x = nullptr;
  const DirectionOutcome* direction = nullptr;
  /// Unset when the direction certified criticality.
  std::optional<ArmijoResult> step;
  const Vector* x_next = nullptr;
};

using IterationObserver = std::function<void(const IterationEvent&)>;

/// Descent loop with a single epsilon. Runs until the direction computation
/// certifies (eps, delta)-criticality or max_outer_iterations steps were taken.
///
/// Counters in the result are the delta on `problem`; they are per-run only
/// if no other run uses the same instance concurrently.
SolverRun solve(const Problem& problem, const Vector& x1, const SolverConfig& config,
                const IterationObserver& observer = {});

/// Runs `solve` for each epsilon of config.epsilon_schedule in turn, each
/// stage starting from the previous stage's final iterate.
SolverRun solve_eps_decreasing(const Problem& problem, const Vector& x1, const SolverConfig& config,
                               const IterationObserver& observer = {});

/// Dispatches on whether config.epsilon_schedule is set.
SolverRun run_solver(const Problem& problem, const Vector& x1, const SolverConfig& config,
                     const IterationObserver& observer = {});

/// One-sided check: true means a bundle inside F_eps(x) with min-norm <= delta
/// was found. false does not prove non-criticality.
bool is_eps_delta_critical(const Problem& problem, const Vector& x, double epsilon, double delta,
                           SolverConfig base = {});

}  // namespace nsmop
