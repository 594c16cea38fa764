#include "nsmop/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nsmop {

bool all_finite(const Vector& x) { return x.allFinite(); }

ObjectiveOracle::ObjectiveOracle(std::string name, ValueFn value_fn, SubgradFn subgrad_fn)
    : ObjectiveOracle(std::move(name), std::make_shared<const Functions>(
                                           Functions{std::move(value_fn), std::move(subgrad_fn)})) {
  if (!fns_->value || !fns_->subgrad) {
    throw ConfigError("objective '" + name_ + "' needs both a value and a subgradient function");
  }
}

ObjectiveOracle::ObjectiveOracle(std::string name, std::shared_ptr<const Functions> fns)
    : name_(std::move(name)), fns_(std::move(fns)), counters_(std::make_unique<Counters>()) {}

double ObjectiveOracle::value(const Vector& x) const {
  if (!all_finite(x)) {
    throw NonFiniteError("objective '" + name_ + "' evaluated at a non-finite point");
  }
  counters_->values.fetch_add(1, std::memory_order_relaxed);
  const double fx = fns_->value(x);
  if (!std::isfinite(fx)) {
    std::ostringstream os;
    os << "objective '" << name_ << "' returned " << fx << " at (" << x.transpose() << ")";
    throw NonFiniteError(os.str());
  }
  return fx;
}

Vector ObjectiveOracle::subgradient(const Vector& x) const {
  if (!all_finite(x)) {
    throw NonFiniteError("subgradient of '" + name_ + "' requested at a non-finite point");
  }
  counters_->subgrads.fetch_add(1, std::memory_order_relaxed);
  Vector g = fns_->subgrad(x);
  if (g.size() != x.size()) {
    throw DimensionError("subgradient of '" + name_ + "' has dimension " +
                         std::to_string(g.size()) + ", expected " + std::to_string(x.size()));
  }
  if (!all_finite(g)) {
    std::ostringstream os;
    os << "subgradient of '" << name_ << "' is not finite at (" << x.transpose() << ")";
    throw NonFiniteError(os.str());
  }
  return g;
}

ObjectiveOracle ObjectiveOracle::fresh_copy() const { return ObjectiveOracle(name_, fns_); }

CounterSnapshot CounterSnapshot::operator-(const CounterSnapshot& rhs) const {
  return {value_evals - rhs.value_evals, subgrad_evals - rhs.subgrad_evals,
          outer_iterations - rhs.outer_iterations};
}

CounterSnapshot& CounterSnapshot::operator+=(const CounterSnapshot& rhs) {
  value_evals += rhs.value_evals;
  subgrad_evals += rhs.subgrad_evals;
  outer_iterations += rhs.outer_iterations;
  return *this;
}

Problem::Problem(std::string name, std::size_t dimension, std::vector<ObjectiveOracle> objectives,
                 std::optional<Box> benchmark_box)
    : name_(std::move(name)),
      dimension_(dimension),
      objectives_(std::move(objectives)),
      box_(std::move(benchmark_box)) {
  if (dimension_ == 0) throw DimensionError("problem '" + name_ + "': dimension must be > 0");
  if (objectives_.empty()) throw DimensionError("problem '" + name_ + "': needs k >= 1");
  if (box_) {
    const auto& b = *box_;
    if (static_cast<std::size_t>(b.lower.size()) != dimension_ ||
        static_cast<std::size_t>(b.upper.size()) != dimension_) {
      throw DimensionError("problem '" + name_ + "': benchmark box has the wrong dimension");
    }
    if (!all_finite(b.lower) || !all_finite(b.upper) || !(b.lower.array() < b.upper.array()).all()) {
      throw ConfigError("problem '" + name_ + "': benchmark box needs lower < upper");
    }
  }
}

Vector Problem::values(const Vector& x) const {
  check_point(x);
  Vector fx(static_cast<Eigen::Index>(objectives_.size()));
  for (std::size_t i = 0; i < objectives_.size(); ++i) {
    fx[static_cast<Eigen::Index>(i)] = objectives_[i].value(x);
  }
  return fx;
}

void Problem::check_point(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension_) {
    throw DimensionError("problem '" + name_ + "': point has dimension " +
                         std::to_string(x.size()) + ", expected " + std::to_string(dimension_));
  }
  if (!all_finite(x)) throw NonFiniteError("problem '" + name_ + "': non-finite point");
}

CounterSnapshot Problem::snapshot_counters() const {
  CounterSnapshot s;
  for (const auto& o : objectives_) {
    s.value_evals += o.value_count();
    s.subgrad_evals += o.subgrad_count();
  }
  return s;
}

Problem Problem::clone() const {
  std::vector<ObjectiveOracle> objs;
  objs.reserve(objectives_.size());
  for (const auto& o : objectives_) objs.push_back(o.fresh_copy());
  return Problem(name_, dimension_, std::move(objs), box_);
}

bool dominates(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("dominates: objective vectors of length " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()));
  }
  bool strict = false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

void SolverConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be > 0");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be > 0");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw ConfigError("armijo_c must lie in (0,1)");
  if (const auto* f = std::get_if<FixedStep>(&t0_mode); f && !(f->t0 > 0.0 && std::isfinite(f->t0))) {
    throw ConfigError("t0 must be > 0");
  }
  if (max_outer_iterations < 1 || max_direction_iterations < 1 || max_bisection_iterations < 1 ||
      max_armijo_halvings < 1) {
    throw ConfigError("iteration guards must be positive");
  }
  if (!(qp_tolerance > 0.0)) throw ConfigError("qp_tolerance must be > 0");
  for (std::size_t i = 0; i < epsilon_schedule.size(); ++i) {
    const double e = epsilon_schedule[i];
    if (!(e > 0.0) || !std::isfinite(e)) throw ConfigError("epsilon schedule must be positive");
    if (i > 0 && !(e < epsilon_schedule[i - 1])) {
      throw ConfigError("epsilon schedule must be strictly decreasing");
    }
  }
}

double initial_step(const StepMode& mode, double direction_norm) {
  if (const auto* f = std::get_if<FixedStep>(&mode)) return f->t0;
  return std::max(1.0 / direction_norm, 1.0);
}

}  // namespace nsmop
