#include "nsmop/descent.hpp"

#include <cmath>
#include <sstream>

namespace nsmop {

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::critical:
      return "critical";
    case StopReason::max_iterations:
      return "max_iterations";
    case StopReason::unbounded_suspected:
      return "unbounded_suspected";
  }
  return "unknown";
}

ArmijoResult armijo_step(const Problem& problem, const Vector& x, const Vector& v, double epsilon,
                         double c, double t0, int max_armijo_halvings, const ArmijoHint& hint) {
  problem.check_point(x);
  problem.check_point(v);
  const double v_norm = v.norm();
  if (!(v_norm > 0.0)) throw ContractViolation("armijo_step: direction must be nonzero");
  if (!(t0 > 0.0)) throw ConfigError("armijo_step: t0 must be > 0");
  const double v_sq = v.squaredNorm();
  const double floor_step = epsilon / v_norm;
  const Vector fx = hint.fx ? *hint.fx : problem.values(x);

  ArmijoResult out;
  for (int s = 0; s <= max_armijo_halvings; ++s) {
    const double t = std::ldexp(t0, -s);
    out.halvings = s;
    if (t <= floor_step) break;
    Vector ft = problem.values(x + t * v);
    if ((ft.array() <= fx.array() - t * c * v_sq).all()) {
      out.step = t;
      out.f_new = std::move(ft);
      return out;
    }
  }

  out.step = floor_step;
  out.used_floor = true;
  out.f_new = hint.f_at_radius ? *hint.f_at_radius : problem.values(x + floor_step * v);
  // Same form as the acceptance test, so a direction that passed it passes here.
  if (!(out.f_new.array() <= fx.array() - c * epsilon * v_norm).all()) {
    std::ostringstream os;
    os << "armijo_step: floor step eps/||v|| = " << floor_step
       << " gives no sufficient decrease; direction was not acceptable";
    throw ContractViolation(os.str());
  }
  return out;
}

namespace {

void record_point(SolverRun& run, const Vector& x, const Vector& fx, bool history) {
  if (history) {
    run.iterates.push_back(x);
    run.values.push_back(fx);
  }
}

// Core loop shared by solve and the stages of solve_eps_decreasing.
void descend(const Problem& problem, Vector x, Vector fx, const SolverConfig& config,
             const IterationObserver& observer, SolverRun& run) {
  const bool history = config.store_history;
  const Vector f_start = fx;
  std::uint64_t steps = 0;
  StopReason reason = StopReason::max_iterations;

  for (int j = 1; j <= config.max_outer_iterations + 1; ++j) {
    const DirectionOutcome dir = compute_descent_direction(problem, x, config, fx);
    const double v_norm = dir.v.norm();
    if (history) {
      run.directions.push_back(dir.v);
      run.direction_norms.push_back(v_norm);
    }
    if (dir.status == DirectionStatus::critical) {
      if (observer) observer({static_cast<std::size_t>(j), &x, &dir, std::nullopt, nullptr});
      reason = StopReason::critical;
      break;
    }
    if (j > config.max_outer_iterations) {
      // Guard reached; the last direction is reported but not taken.
      if (history) {
        run.directions.pop_back();
        run.direction_norms.pop_back();
      }
      break;
    }
    const double t0 = initial_step(config.t0_mode, v_norm);
    ArmijoResult step = armijo_step(problem, x, dir.v, config.epsilon, config.armijo_c, t0,
                                    config.max_armijo_halvings, {dir.fx, dir.f_at_radius});
    Vector x_next = x + step.step * dir.v;
    if (observer) observer({static_cast<std::size_t>(j), &x, &dir, step, &x_next});
    if (history) run.step_lengths.push_back(step.step);
    x = std::move(x_next);
    fx = std::move(step.f_new);
    record_point(run, x, fx, history);
    ++steps;
  }

  if (reason == StopReason::max_iterations &&
      (f_start - fx).minCoeff() > config.unbounded_threshold) {
    reason = StopReason::unbounded_suspected;
  }
  run.counters.outer_iterations += steps;
  run.stage_stop_reasons.push_back(reason);
  run.stop_reason = reason;
  run.final_point = std::move(x);
  run.final_values = std::move(fx);
}

}  // namespace

SolverRun solve(const Problem& problem, const Vector& x1, const SolverConfig& config,
                const IterationObserver& observer) {
  config.validate();
  if (!config.epsilon_schedule.empty()) {
    throw ConfigError("solve: epsilon schedule given; use solve_eps_decreasing");
  }
  problem.check_point(x1);
  const CounterSnapshot before = problem.snapshot_counters();
  SolverRun run;
  const Vector f1 = problem.values(x1);
  run.stage_starts.push_back(0);
  record_point(run, x1, f1, config.store_history);
  descend(problem, x1, f1, config, observer, run);
  const CounterSnapshot used = problem.snapshot_counters() - before;
  run.counters.value_evals = used.value_evals;
  run.counters.subgrad_evals = used.subgrad_evals;
  if (!config.store_history) {
    run.iterates.push_back(run.final_point);
    run.values.push_back(run.final_values);
  }
  return run;
}

SolverRun solve_eps_decreasing(const Problem& problem, const Vector& x1, const SolverConfig& config,
                               const IterationObserver& observer) {
  config.validate();
  if (config.epsilon_schedule.empty()) {
    throw ConfigError("solve_eps_decreasing: epsilon schedule is empty");
  }
  problem.check_point(x1);
  const CounterSnapshot before = problem.snapshot_counters();
  SolverRun run;
  Vector y = x1;
  Vector fy = problem.values(x1);
  record_point(run, y, fy, config.store_history);
  SolverConfig stage = config;
  stage.epsilon_schedule.clear();
  for (double eps : config.epsilon_schedule) {
    stage.epsilon = eps;
    run.stage_starts.push_back(config.store_history ? run.iterates.size() - 1 : 0);
    descend(problem, y, fy, stage, observer, run);
    y = run.final_point;
    fy = run.final_values;
  }
  const CounterSnapshot used = problem.snapshot_counters() - before;
  run.counters.value_evals = used.value_evals;
  run.counters.subgrad_evals = used.subgrad_evals;
  if (!config.store_history) {
    run.iterates.push_back(run.final_point);
    run.values.push_back(run.final_values);
  }
  return run;
}

SolverRun run_solver(const Problem& problem, const Vector& x1, const SolverConfig& config,
                     const IterationObserver& observer) {
  return config.epsilon_schedule.empty() ? solve(problem, x1, config, observer)
                                         : solve_eps_decreasing(problem, x1, config, observer);
}

bool is_eps_delta_critical(const Problem& problem, const Vector& x, double epsilon, double delta,
                           SolverConfig base) {
  base.epsilon = epsilon;
  base.delta = delta;
  base.epsilon_schedule.clear();
  return compute_descent_direction(problem, x, base).status == DirectionStatus::critical;
}

}  // namespace nsmop
