#include "nsmop/minnorm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nsmop {
namespace {

// Weights below this are treated as leaving the active set.
constexpr double kWeightFloor = 1e-14;

struct AffineMin {
  Vector point;
  Eigen::VectorXd weights;  // affine weights over the active set, sum to 1
};

// Point of minimal norm in the affine hull of the active points.
AffineMin affine_minimizer(const Bundle& bundle, const std::vector<std::size_t>& active) {
  const Vector& s0 = bundle[active.front()];
  const auto r = static_cast<Eigen::Index>(active.size()) - 1;
  AffineMin out;
  out.weights.setZero(r + 1);
  if (r == 0) {
    out.point = s0;
    out.weights[0] = 1.0;
    return out;
  }
  Eigen::MatrixXd d(s0.size(), r);
  for (Eigen::Index j = 0; j < r; ++j) d.col(j) = bundle[active[static_cast<std::size_t>(j + 1)]] - s0;
  const Eigen::VectorXd beta = d.colPivHouseholderQr().solve(-s0);
  out.weights[0] = 1.0 - beta.sum();
  out.weights.tail(r) = beta;
  out.point = s0 + d * beta;
  return out;
}

Vector combine(const Bundle& bundle, const std::vector<std::size_t>& active,
               const std::vector<double>& weights) {
  Vector x = Vector::Zero(bundle.front().size());
  for (std::size_t i = 0; i < active.size(); ++i) x += weights[i] * bundle[active[i]];
  return x;
}

MinNormSolution make_solution(const Bundle& bundle, const std::vector<std::size_t>& active,
                              const std::vector<double>& weights, bool snap_to_zero) {
  MinNormSolution sol;
  sol.coefficients.assign(bundle.size(), 0.0);
  for (std::size_t i = 0; i < active.size(); ++i) sol.coefficients[active[i]] += weights[i];
  if (snap_to_zero) {
    sol.v = Vector::Zero(bundle.front().size());
  } else {
    sol.v = -combine(bundle, active, weights);
  }
  sol.norm_sq = sol.v.squaredNorm();
  return sol;
}

}  // namespace

MinNormSolution min_norm_point(const Bundle& bundle, double qp_tolerance) {
  if (bundle.empty()) throw DimensionError("min_norm_point: empty bundle");
  if (!(qp_tolerance > 0.0)) throw ConfigError("min_norm_point: qp_tolerance must be > 0");
  const auto n = bundle.front().size();
  if (n == 0) throw DimensionError("min_norm_point: zero-dimensional bundle");
  double scale = 1.0;
  for (const auto& p : bundle) {
    if (p.size() != n) throw DimensionError("min_norm_point: bundle members differ in dimension");
    if (!all_finite(p)) throw NonFiniteError("min_norm_point: non-finite bundle member");
    scale = std::max(scale, p.squaredNorm());
  }
  const double gap_tol = qp_tolerance * scale;
  const double zero_tol = qp_tolerance * std::sqrt(scale);

  std::size_t first = 0;
  for (std::size_t i = 1; i < bundle.size(); ++i) {
    if (bundle[i].squaredNorm() < bundle[first].squaredNorm()) first = i;
  }
  std::vector<std::size_t> active{first};
  std::vector<double> weights{1.0};
  Vector x = bundle[first];

  const int max_major = 50 + 10 * static_cast<int>(bundle.size() + static_cast<std::size_t>(n));
  for (int major = 0; major < max_major; ++major) {
    if (x.norm() <= zero_tol) return make_solution(bundle, active, weights, true);

    std::size_t best = 0;
    double best_dot = x.dot(bundle[0]);
    for (std::size_t i = 1; i < bundle.size(); ++i) {
      const double d = x.dot(bundle[i]);
      if (d < best_dot) {
        best_dot = d;
        best = i;
      }
    }
    const double gap = x.squaredNorm() - best_dot;
    if (gap <= gap_tol) return make_solution(bundle, active, weights, false);
    if (std::find(active.begin(), active.end(), best) != active.end()) {
      // Rounding left x slightly off the affine minimizer of the active set.
      if (gap <= 1e2 * gap_tol) return make_solution(bundle, active, weights, false);
      throw MinNormConvergenceError(
          "min_norm_point: stalled with optimality gap " + std::to_string(gap),
          make_solution(bundle, active, weights, false));
    }
    active.push_back(best);
    weights.push_back(0.0);

    // Minor cycle: move toward the affine minimizer, dropping points whose
    // weight would turn negative.
    for (;;) {
      const AffineMin am = affine_minimizer(bundle, active);
      bool interior = true;
      for (Eigen::Index i = 0; i < am.weights.size(); ++i) {
        if (am.weights[i] <= kWeightFloor) interior = false;
      }
      if (interior) {
        for (std::size_t i = 0; i < weights.size(); ++i) {
          weights[i] = am.weights[static_cast<Eigen::Index>(i)];
        }
        x = combine(bundle, active, weights);
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < weights.size(); ++i) {
        const double a = am.weights[static_cast<Eigen::Index>(i)];
        if (a <= kWeightFloor && weights[i] - a > 0.0) {
          theta = std::min(theta, weights[i] / (weights[i] - a));
        }
      }
      for (std::size_t i = 0; i < weights.size(); ++i) {
        weights[i] = (1.0 - theta) * weights[i] + theta * am.weights[static_cast<Eigen::Index>(i)];
      }
      std::vector<std::size_t> kept_active;
      std::vector<double> kept_weights;
      for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > kWeightFloor) {
          kept_active.push_back(active[i]);
          kept_weights.push_back(weights[i]);
        }
      }
      if (kept_active.empty()) {
        // Only possible through cancellation; keep the newest point.
        kept_active.push_back(active.back());
        kept_weights.push_back(1.0);
      }
      double sum = 0.0;
      for (double w : kept_weights) sum += w;
      for (double& w : kept_weights) w /= sum;
      const bool shrunk = kept_active.size() < active.size();
      active = std::move(kept_active);
      weights = std::move(kept_weights);
      x = combine(bundle, active, weights);
      if (!shrunk) break;
    }
  }
  throw MinNormConvergenceError("min_norm_point: iteration cap reached",
                                make_solution(bundle, active, weights, false));
}

}  // namespace nsmop
