#pragma once

#include <vector>

#include "nsmop/core.hpp"

namespace nsmop {

/// Finite set of (epsilon-)subgradients. Duplicates are allowed.
using Bundle = std::vector<Vector>;

struct MinNormSolution {
  /// argmin over -conv(W) of ||v||^2.
  Vector v;
  /// Convex weights with -v = sum_i coefficients[i] * W[i]. Not unique when
  /// W is affinely dependent; only v is.
  std::vector<double> coefficients;
  double norm_sq = 0.0;
};

/// Thrown when the iteration cap is hit before the optimality gap closes.
class MinNormConvergenceError : public Error {
 public:
  MinNormConvergenceError(const std::string& what, MinNormSolution best)
      : Error(what), best_(std::move(best)) {}
  const MinNormSolution& best() const { return best_; }

 private:
  MinNormSolution best_;
};

/// Minimum-norm point of -conv(W), computed with Wolfe's active-set method.
///
/// The returned v satisfies <v, xi> <= -||v||^2 + qp_tolerance * s for every
/// xi in W, where s = max(1, max ||xi||^2). v is snapped to exactly zero when
/// the hull contains the origin up to that tolerance.
MinNormSolution min_norm_point(const Bundle& bundle, double qp_tolerance = 1e-12);

}  // namespace nsmop
