#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "nsmop/core.hpp"
#include "nsmop/minnorm.hpp"

namespace nsmop::validation {

struct Polytope {
  std::vector<Vector> vertices;  // in R^2
};

struct Disk {
  Vector center;  // in R^2
  double radius = 0.0;
};

using ConvexBody = std::variant<Polytope, Disk>;

struct HullMinNorm {
  /// Bracket on min ||p|| over conv(union of bodies): disks replaced by
  /// circumscribed (lower) and inscribed (upper) regular polygons.
  double lower = 0.0;
  double upper = 0.0;
  double midpoint() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
  double midpoint_sq() const { return midpoint() * midpoint(); }
  int facets = 0;
};

/// Min-norm over the convex hull of the bodies, bracketed by polygonal
/// approximations of the disks. Doubles the facet count until the bracket
/// is at most `tolerance` wide; throws Error past 2^20 facets.
HullMinNorm exact_min_norm_over_hull(const std::vector<ConvexBody>& bodies, int disk_facets = 512,
                                     double tolerance = 1e-4);

/// Exact minimum of ||sum lambda_i w_i|| over the simplex lattice with the
/// given pitch (1/pitch must be an integer within rounding). m <= 5.
double simplex_grid_min_norm(const Bundle& bundle, double pitch);

/// Central differences per coordinate.
Vector finite_difference_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                                  double step = 1e-6);

/// Euclidean distance from p to conv(points).
double distance_to_hull(const Vector& p, const std::vector<Vector>& points);

/// The exact epsilon-subdifferentials of the two objectives
/// ((x1-1)^2 + (x2-1)^2, x1^2 + |x2|) at a point with x2 = 0: a disk of
/// radius 2 eps around 2x - (2,2), and {2x1 + [-2eps, 2eps]} x [-1, 1].
std::vector<ConvexBody> example_2_5_subdifferentials(const Vector& x, double epsilon);

}  // namespace nsmop::validation
