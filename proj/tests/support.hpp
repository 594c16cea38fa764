#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "nsmop/core.hpp"

namespace testsupport {

using nsmop::Vector;

inline Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// Min-norm point of conv(W) by brute force over every face: for each
// subset, minimise ||sum l_i w_i|| on its affine hull via the KKT system,
// keep the candidate if all weights are >= 0. Exact up to rounding; fine
// for m <= 6.
inline double face_enumeration_min_norm(const std::vector<Vector>& w) {
  const std::size_t m = w.size();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1U << m); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1U << i)) idx.push_back(i);
    const auto s = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(s + 1, s + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
    for (Eigen::Index a = 0; a < s; ++a) {
      for (Eigen::Index b = 0; b < s; ++b) K(a, b) = w[idx[a]].dot(w[idx[b]]);
      K(a, s) = 1.0;
      K(s, a) = 1.0;
    }
    rhs[s] = 1.0;
    Eigen::VectorXd sol = K.completeOrthogonalDecomposition().solve(rhs);
    if ((K * sol - rhs).norm() > 1e-8) continue;
    bool ok = true;
    Vector p = Vector::Zero(w[0].size());
    for (Eigen::Index a = 0; a < s; ++a) {
      if (sol[a] < -1e-12) ok = false;
      p += sol[a] * w[idx[a]];
    }
    if (ok) best = std::min(best, p.norm());
  }
  return best;
}

}  // namespace testsupport
