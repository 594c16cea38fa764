#include "nsmop/direction.hpp"

#include <sstream>

namespace nsmop {
namespace {

// Slack for accepting the last bisection probe after a stall.
constexpr double kStallSlack = 1e-12;

}  // namespace

HFunction::HFunction(const ObjectiveOracle& objective, Vector x, Vector v, double c, double fx)
    : objective_(&objective),
      x_(std::move(x)),
      v_(std::move(v)),
      c_(c),
      fx_(fx),
      slope_(c_ * v_.squaredNorm()) {}

double HFunction::operator()(double t) const {
  if (t == 0.0) return 0.0;
  return objective_->value(x_ + t * v_) - fx_ + slope_ * t;
}

Bundle DirectionOutcome::subgradients() const {
  Bundle w;
  w.reserve(bundle.size());
  for (const auto& m : bundle) w.push_back(m.xi);
  return w;
}

NewSubgradient find_new_subgradient(const Problem& problem, std::size_t objective_index,
                                    const Vector& x, const Vector& v, double epsilon, double c,
                                    int max_bisection_iterations, const BisectionHint& hint) {
  if (objective_index >= problem.num_objectives()) {
    throw DimensionError("find_new_subgradient: objective index out of range");
  }
  problem.check_point(x);
  problem.check_point(v);
  const double v_norm = v.norm();
  if (!(v_norm > 0.0)) throw ContractViolation("find_new_subgradient: direction must be nonzero");
  if (max_bisection_iterations < 1) throw ConfigError("max_bisection_iterations must be >= 1");

  const ObjectiveOracle& objective = problem.objective(objective_index);
  const double fx = hint.fx ? *hint.fx : objective.value(x);
  const HFunction h(objective, x, v, c, fx);
  const double threshold = -c * v.squaredNorm();

  double a = 0.0;
  double b = epsilon / v_norm;
  double h_b = hint.f_at_radius ? *hint.f_at_radius - fx + c * b * v.squaredNorm() : h(b);
  double t = 0.5 * (a + b);

  NewSubgradient out;
  for (int step = 1;; ++step) {
    out.point = x + t * v;
    out.xi = objective.subgradient(out.point);
    out.t = t;
    out.bisection_steps = step;
    if (v.dot(out.xi) > threshold) return out;
    if (step >= max_bisection_iterations) break;
    const double h_t = h(t);
    if (h_b > h_t) {
      a = t;
    } else {
      b = t;
      h_b = h_t;
    }
    t = 0.5 * (a + b);
  }
  if (v.dot(out.xi) > threshold - kStallSlack) {
    out.stalled = true;
    return out;
  }
  std::ostringstream os;
  os << "find_new_subgradient: bisection on objective '" << objective.name() << "' stalled after "
     << max_bisection_iterations << " probes at t = " << t;
  throw BisectionStallError(os.str(), out.xi, out.t);
}

AcceptanceCheck check_acceptance(const Problem& problem, const Vector& x, const Vector& fx,
                                 const Vector& v, double epsilon, double c) {
  const double v_norm = v.norm();
  if (!(v_norm > 0.0)) throw ContractViolation("check_acceptance: direction must be nonzero");
  const Vector trial = x + (epsilon / v_norm) * v;
  AcceptanceCheck out;
  out.f_trial = problem.values(trial);
  out.threshold = fx.array() - c * epsilon * v_norm;
  for (Eigen::Index i = 0; i < fx.size(); ++i) {
    if (out.f_trial[i] > out.threshold[i]) out.violating.push_back(static_cast<std::size_t>(i));
  }
  return out;
}

DirectionOutcome compute_descent_direction(const Problem& problem, const Vector& x,
                                           const SolverConfig& config,
                                           const std::optional<Vector>& fx) {
  config.validate();
  problem.check_point(x);
  const std::size_t k = problem.num_objectives();

  DirectionOutcome out;
  out.fx = fx ? *fx : problem.values(x);
  if (static_cast<std::size_t>(out.fx.size()) != k) {
    throw DimensionError("compute_descent_direction: cached f(x) has the wrong length");
  }
  for (std::size_t i = 0; i < k; ++i) {
    out.bundle.push_back({problem.objective(i).subgradient(x), i, x});
  }

  for (int pass = 1; pass <= config.max_direction_iterations; ++pass) {
    const MinNormSolution sol = min_norm_point(out.subgradients(), config.qp_tolerance);
    out.v = sol.v;
    out.iterations = pass;
    const double v_norm = sol.v.norm();
    out.trace.push_back({v_norm, {}});
    if (v_norm <= config.delta) {
      out.status = DirectionStatus::critical;
      return out;
    }

    AcceptanceCheck check = check_acceptance(problem, x, out.fx, sol.v, config.epsilon,
                                             config.armijo_c);
    out.trace.back().violating = check.violating;
    if (check.violating.empty()) {
      out.status = DirectionStatus::acceptable;
      out.f_at_radius = std::move(check.f_trial);
      return out;
    }

    std::vector<std::size_t> enrich = check.violating;
    if (config.single_index_enrichment) enrich.resize(1);
    for (std::size_t j : enrich) {
      const auto ji = static_cast<Eigen::Index>(j);
      NewSubgradient ns =
          find_new_subgradient(problem, j, x, sol.v, config.epsilon, config.armijo_c,
                               config.max_bisection_iterations, {out.fx[ji], check.f_trial[ji]});
      out.bundle.push_back({std::move(ns.xi), j, std::move(ns.point)});
    }
  }
  std::ostringstream os;
  os << "compute_descent_direction: no acceptable direction after "
     << config.max_direction_iterations << " passes (last ||v|| = " << out.trace.back().v_norm
     << ")";
  throw DirectionNonTermination(os.str(), out.trace);
}

}  // namespace nsmop
