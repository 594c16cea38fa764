#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nsmop/core.hpp"
#include "nsmop/descent.hpp"

namespace nsmop {

/// Every kernel below has a plain serial loop (the reference) and an OpenMP
/// version. Both produce identical results in identical order.
enum class Execution { serial, parallel };

/// Number of OpenMP threads a parallel kernel would use (1 without OpenMP).
int max_threads();

struct BatchResult {
  /// runs[i] is empty iff errors[i] is non-empty.
  std::vector<std::optional<SolverRun>> runs;
  std::vector<std::string> errors;

  bool all_succeeded() const;
};

/// Runs the solver from every start. Each run gets its own clone of the
/// problem, so per-run counters are exact.
BatchResult solve_batch(const Problem& problem, const std::vector<Vector>& starts,
                        const SolverConfig& config, Execution exec = Execution::parallel);

using PointMap = std::function<Vector(const Vector&)>;

/// images[i] = map(points[i]). If any call throws, the exception of the
/// lowest failing index is rethrown after all points were attempted.
std::vector<Vector> map_points(const PointMap& map, const std::vector<Vector>& points,
                               Execution exec = Execution::parallel);

/// mask[i] is true iff no other vector in `values` dominates values[i].
std::vector<bool> nondominated_mask(const std::vector<Vector>& values,
                                    Execution exec = Execution::parallel);

}  // namespace nsmop
