#include "nsmop/subdivision.hpp"

#include <cmath>
#include <map>

#include "nsmop/descent.hpp"

namespace nsmop::subdivision {

bool Box::contains(const Vector& p) const {
  return ((p - center).cwiseAbs().array() <= radii.array()).all();
}

double Box::volume() const { return (2.0 * radii).prod(); }

Box from_bounds(const nsmop::Box& bounds) {
  return {0.5 * (bounds.lower + bounds.upper), 0.5 * (bounds.upper - bounds.lower), 0};
}

BoxCollection initial_collection(const Box& root) {
  if (!(root.radii.array() > 0.0).all()) throw ConfigError("root box needs positive radii");
  return {root, {root}};
}

PointMap descent_map(const Problem& problem, const SolverConfig& config, int m) {
  if (m < 1) throw ConfigError("descent_map: m must be >= 1");
  SolverConfig inner = config;
  inner.max_outer_iterations = m;
  inner.store_history = false;
  inner.epsilon_schedule.clear();
  inner.validate();
  return [&problem, inner](const Vector& x) { return solve(problem, x, inner).final_point; };
}

BoxCollection subdivide(const BoxCollection& collection) {
  BoxCollection out{collection.root, {}};
  if (collection.boxes.empty()) return out;
  const auto n = collection.root.center.size();
  const std::size_t children = std::size_t{1} << n;
  out.boxes.reserve(collection.boxes.size() * children);
  for (const Box& b : collection.boxes) {
    const Vector half = 0.5 * b.radii;
    for (std::size_t mask = 0; mask < children; ++mask) {
      Vector c = b.center;
      for (Eigen::Index i = 0; i < n; ++i) {
        c[i] += ((mask >> i) & 1U) ? half[i] : -half[i];
      }
      out.boxes.push_back({std::move(c), half, b.depth + 1});
    }
  }
  return out;
}

std::vector<Vector> sample_lattice(const Box& box, int samples_per_axis) {
  if (samples_per_axis < 1) throw ConfigError("samples_per_axis must be >= 1");
  const auto n = box.center.size();
  std::size_t total = 1;
  for (Eigen::Index i = 0; i < n; ++i) total *= static_cast<std::size_t>(samples_per_axis);
  std::vector<Vector> pts;
  pts.reserve(total);
  const Vector lo = box.lower();
  const Vector pitch = 2.0 * box.radii / samples_per_axis;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (std::size_t p = 0; p < total; ++p) {
    Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      x[i] = lo[i] + (idx[static_cast<std::size_t>(i)] + 0.5) * pitch[i];
    }
    pts.push_back(std::move(x));
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      auto& k = idx[static_cast<std::size_t>(i)];
      if (++k < samples_per_axis) break;
      k = 0;
    }
  }
  return pts;
}

namespace {

using CellKey = std::vector<long long>;

// Integer coordinates of a box within the dyadic grid of the root at its depth.
CellKey cell_of(const Box& root, const Box& b) {
  const auto n = root.center.size();
  CellKey key(static_cast<std::size_t>(n));
  const Vector lo = root.lower();
  for (Eigen::Index i = 0; i < n; ++i) {
    key[static_cast<std::size_t>(i)] =
        std::llround((b.center[i] - lo[i]) / (2.0 * b.radii[i]) - 0.5);
  }
  return key;
}

}  // namespace

SelectionResult select(const BoxCollection& collection, const PointMap& g, int samples_per_axis,
                       Execution exec) {
  SelectionResult out;
  out.collection.root = collection.root;
  if (collection.boxes.empty()) return out;
  for (const Box& b : collection.boxes) {
    auto s = sample_lattice(b, samples_per_axis);
    out.samples.insert(out.samples.end(), std::make_move_iterator(s.begin()),
                       std::make_move_iterator(s.end()));
  }
  out.images = map_points(g, out.samples, exec);

  std::map<CellKey, std::size_t> index;
  for (std::size_t k = 0; k < collection.boxes.size(); ++k) {
    index.emplace(cell_of(collection.root, collection.boxes[k]), k);
  }
  const Box& root = collection.root;
  const auto n = root.center.size();
  const Vector lo = root.lower();
  const Vector width = 2.0 * collection.boxes.front().radii;
  std::vector<char> hit(collection.boxes.size(), 0);
  const std::size_t neighbours = static_cast<std::size_t>(std::pow(3, n));

  for (const Vector& p : out.images) {
    if (!root.contains(p)) {
      ++out.escaped;
      continue;
    }
    CellKey base(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      base[static_cast<std::size_t>(i)] = static_cast<long long>(std::floor((p[i] - lo[i]) / width[i]));
    }
    // The point may sit on a face shared by up to 2^n cells; test the 3^n
    // neighbourhood exactly.
    bool any = false;
    for (std::size_t code = 0; code < neighbours; ++code) {
      CellKey key = base;
      std::size_t c = code;
      for (Eigen::Index i = 0; i < n; ++i) {
        key[static_cast<std::size_t>(i)] += static_cast<long long>(c % 3) - 1;
        c /= 3;
      }
      auto it = index.find(key);
      if (it != index.end() && collection.boxes[it->second].contains(p)) {
        hit[it->second] = 1;
        any = true;
      }
    }
    if (!any) ++out.unselected;
  }
  for (std::size_t k = 0; k < collection.boxes.size(); ++k) {
    if (hit[k]) out.collection.boxes.push_back(collection.boxes[k]);
  }
  return out;
}

ParetoCover pareto_cover(const Problem& problem, const SolverConfig& config, const Box& root,
                         int iterations, int m, int samples_per_axis, Execution exec) {
  if (iterations < 0) throw ConfigError("pareto_cover: iterations must be >= 0");
  ParetoCover out;
  out.collection = initial_collection(root);
  const PointMap g = descent_map(problem, config, m);
  for (int it = 0; it < iterations; ++it) {
    SelectionResult sel = select(subdivide(out.collection), g, samples_per_axis, exec);
    out.escaped += sel.escaped;
    if (sel.collection.boxes.empty()) {
      throw Error("pareto_cover: selection " + std::to_string(it + 1) +
                  " removed every box; enlarge the root box or increase m");
    }
    out.collection = std::move(sel.collection);
    out.boxes_per_iteration.push_back(out.collection.boxes.size());
    if (it + 1 == iterations) {
      out.images = std::move(sel.images);
      out.uncovered = sel.unselected;
    }
  }
  out.image_values.reserve(out.images.size());
  for (const auto& p : out.images) out.image_values.push_back(problem.values(p));
  out.front = nondominated_mask(out.image_values, exec);
  return out;
}

}  // namespace nsmop::subdivision
