#pragma once

#include <optional>
#include <vector>

#include "nsmop/core.hpp"
#include "nsmop/minnorm.hpp"

namespace nsmop {

/// h_i(t) = f_i(x + t v) - f_i(x) + c t ||v||^2. h_i(0) is zero by
/// construction; f_i(x) is supplied, not re-evaluated.
class HFunction {
 public:
  HFunction(const ObjectiveOracle& objective, Vector x, Vector v, double c, double fx);
  double operator()(double t) const;
  double fx() const { return fx_; }

 private:
  const ObjectiveOracle* objective_;
  Vector x_;
  Vector v_;
  double c_;
  double fx_;
  double slope_;  // c ||v||^2
};

/// Bisection ran out of iterations without a subgradient passing the
/// new-subgradient test (even with the 1e-12 slack).
class BisectionStallError : public Error {
 public:
  BisectionStallError(const std::string& what, Vector last_subgradient, double last_t)
      : Error(what), xi_(std::move(last_subgradient)), t_(last_t) {}
  const Vector& last_subgradient() const { return xi_; }
  double last_t() const { return t_; }

 private:
  Vector xi_;
  double t_;
};

struct NewSubgradient {
  Vector xi;
  /// Step t in (0, epsilon/||v||] at which xi was computed.
  double t = 0.0;
  /// Oracle point x + t v.
  Vector point;
  int bisection_steps = 0;
  /// True when accepted on the stall path with slack.
  bool stalled = false;
};

/// Cached objective values that let the bisection skip re-evaluations.
struct BisectionHint {
  std::optional<double> fx;           // f_i(x)
  std::optional<double> f_at_radius;  // f_i(x + (eps/||v||) v)
};

/// Searches t in (0, eps/||v||] for xi in the subdifferential of f_i at
/// x + t v with <v, xi> > -c ||v||^2. Bisection update: a <- t if
/// h_i(b) > h_i(t), else b <- t.
NewSubgradient find_new_subgradient(const Problem& problem, std::size_t objective_index,
                                    const Vector& x, const Vector& v, double epsilon, double c,
                                    int max_bisection_iterations, const BisectionHint& hint = {});

enum class DirectionStatus { critical, acceptable };

struct BundleMember {
  Vector xi;
  std::size_t objective = 0;
  /// Point where the subgradient oracle was called.
  Vector source;
};

struct DirectionIteration {
  double v_norm = 0.0;
  std::vector<std::size_t> violating;  // I_l
};

struct DirectionOutcome {
  DirectionStatus status = DirectionStatus::critical;
  Vector v;
  std::vector<BundleMember> bundle;
  int iterations = 0;
  std::vector<DirectionIteration> trace;
  /// f(x), evaluated once per call.
  Vector fx;
  /// f(x + (eps/||v||) v) for the final v; empty when critical.
  Vector f_at_radius;

  Bundle subgradients() const;
};

class DirectionNonTermination : public Error {
 public:
  DirectionNonTermination(const std::string& what, std::vector<DirectionIteration> trace)
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<DirectionIteration>& trace() const { return trace_; }

 private:
  std::vector<DirectionIteration> trace_;
};

struct AcceptanceCheck {
  Vector f_trial;     // f(x + (eps/||v||) v)
  Vector threshold;   // f(x) - c eps ||v||
  std::vector<std::size_t> violating;
};

/// Sufficient-decrease test at step length eps/||v|| for every objective,
/// with strict comparison and no slack. Requires ||v|| > 0.
AcceptanceCheck check_acceptance(const Problem& problem, const Vector& x, const Vector& fx,
                                 const Vector& v, double epsilon, double c);

/// Enriches a subgradient bundle until its min-norm direction is either
/// short (||v|| <= delta, critical) or passes the sufficient-decrease test.
///
/// The seed bundle holds one subgradient per objective evaluated at x.
/// `fx`, when provided, is used instead of re-evaluating f(x).
DirectionOutcome compute_descent_direction(const Problem& problem, const Vector& x,
                                           const SolverConfig& config,
                                           const std::optional<Vector>& fx = std::nullopt);

}  // namespace nsmop
