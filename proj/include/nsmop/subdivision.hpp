#pragma once

#include <vector>

#include "nsmop/core.hpp"
#include "nsmop/parallel.hpp"

namespace nsmop::subdivision {

/// Closed axis-aligned box given by center and half-widths.
struct Box {
  Vector center;
  Vector radii;
  int depth = 0;

  bool contains(const Vector& p) const;
  double volume() const;
  Vector lower() const { return center - radii; }
  Vector upper() const { return center + radii; }
};

Box from_bounds(const nsmop::Box& bounds);

/// Equal-depth cells of the dyadic refinement of `root`.
struct BoxCollection {
  Box root;
  std::vector<Box> boxes;
};

BoxCollection initial_collection(const Box& root);

/// g(x): at most m outer iterations of the descent loop from x (fewer if
/// x becomes critical). Uses config.epsilon; the epsilon schedule is ignored.
PointMap descent_map(const Problem& problem, const SolverConfig& config, int m);

/// Replaces every box by its 2^n children of half the radius.
BoxCollection subdivide(const BoxCollection& collection);

/// samples_per_axis^n cell-centred lattice points inside the box.
std::vector<Vector> sample_lattice(const Box& box, int samples_per_axis);

struct SelectionResult {
  BoxCollection collection;
  std::vector<Vector> samples;
  std::vector<Vector> images;
  /// Images outside the root box; they select nothing.
  std::size_t escaped = 0;
  /// Images inside the root but in no box of the input collection (cells
  /// removed by an earlier selection); they select nothing either.
  std::size_t unselected = 0;
};

/// Maps the samples of all boxes through g and keeps exactly the boxes that
/// contain at least one image point (closed boxes: a point on a shared face
/// keeps every incident box).
SelectionResult select(const BoxCollection& collection, const PointMap& g, int samples_per_axis,
                       Execution exec = Execution::parallel);

struct ParetoCover {
  BoxCollection collection;
  /// Image points of the last selection and their objective vectors.
  std::vector<Vector> images;
  std::vector<Vector> image_values;
  /// Non-dominated subset of image_values.
  std::vector<bool> front;
  std::size_t escaped = 0;
  /// Final images that lie in the root but in none of the surviving boxes.
  std::size_t uncovered = 0;
  std::vector<std::size_t> boxes_per_iteration;
};

/// Alternates subdivide and select `iterations` times starting from root.
/// Throws Error if a selection leaves no box.
ParetoCover pareto_cover(const Problem& problem, const SolverConfig& config, const Box& root,
                         int iterations, int m, int samples_per_axis,
                         Execution exec = Execution::parallel);

}  // namespace nsmop::subdivision
