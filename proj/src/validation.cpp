#include "nsmop/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nsmop::validation {
namespace {

std::vector<Vector> polygon(const Disk& d, double radius, int facets) {
  std::vector<Vector> pts;
  pts.reserve(static_cast<std::size_t>(facets));
  for (int k = 0; k < facets; ++k) {
    const double a = 2.0 * std::numbers::pi * k / facets;
    Vector p(2);
    p << d.center[0] + radius * std::cos(a), d.center[1] + radius * std::sin(a);
    pts.push_back(std::move(p));
  }
  return pts;
}

double hull_norm(const std::vector<ConvexBody>& bodies, int facets, bool circumscribed) {
  Bundle pts;
  for (const auto& body : bodies) {
    if (const auto* poly = std::get_if<Polytope>(&body)) {
      pts.insert(pts.end(), poly->vertices.begin(), poly->vertices.end());
    } else {
      const auto& d = std::get<Disk>(body);
      if (d.radius == 0.0) {
        pts.push_back(d.center);
        continue;
      }
      const double r = circumscribed ? d.radius / std::cos(std::numbers::pi / facets) : d.radius;
      auto ring = polygon(d, r, facets);
      pts.insert(pts.end(), ring.begin(), ring.end());
    }
  }
  return std::sqrt(min_norm_point(pts, 1e-14).norm_sq);
}

}  // namespace

HullMinNorm exact_min_norm_over_hull(const std::vector<ConvexBody>& bodies, int disk_facets,
                                     double tolerance) {
  if (bodies.empty()) throw DimensionError("exact_min_norm_over_hull: no bodies");
  for (const auto& body : bodies) {
    if (const auto* poly = std::get_if<Polytope>(&body)) {
      if (poly->vertices.empty()) throw DimensionError("polytope without vertices");
    } else if (std::get<Disk>(body).radius < 0.0) {
      throw ConfigError("disk radius must be >= 0");
    }
  }
  if (disk_facets < 3) throw ConfigError("disk_facets must be >= 3");
  for (int facets = disk_facets; facets <= (1 << 20); facets *= 2) {
    HullMinNorm out;
    out.facets = facets;
    out.lower = hull_norm(bodies, facets, true);
    out.upper = hull_norm(bodies, facets, false);
    if (out.width() <= tolerance) return out;
  }
  throw Error("exact_min_norm_over_hull: bracket did not reach the requested width");
}

double simplex_grid_min_norm(const Bundle& bundle, double pitch) {
  const std::size_t m = bundle.size();
  if (m == 0 || m > 5) throw DimensionError("simplex_grid_min_norm: need 1 <= m <= 5");
  if (!(pitch > 0.0) || pitch > 1.0) throw ConfigError("simplex_grid_min_norm: bad pitch");
  const long steps = std::lround(1.0 / pitch);
  if (m == 1) return bundle[0].norm();

  // Enumerate lattice weights of the first m-2 members; along the remaining
  // segment between the last two members ||.||^2 is a convex quadratic in the
  // lattice index, so its lattice minimum is at floor/ceil of the continuous one.
  double best = std::numeric_limits<double>::infinity();
  const Vector& a = bundle[m - 2];
  const Vector& b = bundle[m - 1];
  const Vector d = a - b;
  const double dd = d.squaredNorm();
  std::vector<long> w(m - 2, 0);
  for (;;) {
    long used = 0;
    Vector base = Vector::Zero(a.size());
    for (std::size_t i = 0; i + 2 < m; ++i) {
      used += w[i];
      base += (static_cast<double>(w[i]) / steps) * bundle[i];
    }
    if (used <= steps) {
      // point(j) = base + (j a + (rest - j) b)/steps, j = 0..rest
      const long rest = steps - used;
      const Vector p0 = base + (static_cast<double>(rest) / steps) * b;
      const Vector step_dir = d / static_cast<double>(steps);
      auto eval = [&](long j) { return (p0 + static_cast<double>(j) * step_dir).norm(); };
      long jstar = 0;
      if (dd > 0.0) {
        const double cont = -p0.dot(step_dir) / step_dir.squaredNorm();
        jstar = std::clamp(static_cast<long>(std::floor(cont)), 0L, rest);
      }
      best = std::min(best, eval(jstar));
      if (jstar + 1 <= rest) best = std::min(best, eval(jstar + 1));
    }
    // Next composition prefix.
    std::size_t i = 0;
    for (; i < w.size(); ++i) {
      if (++w[i] <= steps) {
        long s = 0;
        for (std::size_t q = 0; q < w.size(); ++q) s += w[q];
        if (s <= steps) break;
      }
      w[i] = 0;
    }
    if (i == w.size()) break;
  }
  return best;
}

Vector finite_difference_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                                  double step) {
  Vector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector xp = x;
    Vector xm = x;
    xp[i] += step;
    xm[i] -= step;
    g[i] = (f(xp) - f(xm)) / (2.0 * step);
  }
  return g;
}

double distance_to_hull(const Vector& p, const std::vector<Vector>& points) {
  Bundle shifted;
  shifted.reserve(points.size());
  for (const auto& q : points) shifted.push_back(q - p);
  return std::sqrt(min_norm_point(shifted, 1e-14).norm_sq);
}

std::vector<ConvexBody> example_2_5_subdifferentials(const Vector& x, double epsilon) {
  Vector c(2);
  c << 2.0 * x[0] - 2.0, 2.0 * x[1] - 2.0;
  const double lo = 2.0 * x[0] - 2.0 * epsilon;
  const double hi = 2.0 * x[0] + 2.0 * epsilon;
  Polytope rect;
  for (const auto& [u, w] : {std::pair{lo, -1.0}, {hi, -1.0}, {hi, 1.0}, {lo, 1.0}}) {
    Vector p(2);
    p << u, w;
    rect.vertices.push_back(std::move(p));
  }
  return {Disk{c, 2.0 * epsilon}, rect};
}

}  // namespace nsmop::validation
