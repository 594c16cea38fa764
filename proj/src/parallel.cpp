#include "nsmop/parallel.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nsmop {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

bool BatchResult::all_succeeded() const {
  for (const auto& e : errors) {
    if (!e.empty()) return false;
  }
  return true;
}

namespace {

void solve_one(const Problem& problem, const Vector& start, const SolverConfig& config,
               BatchResult& out, std::size_t i) {
  try {
    const Problem local = problem.clone();
    out.runs[i] = run_solver(local, start, config);
  } catch (const std::exception& e) {
    out.errors[i] = e.what();
  }
}

}  // namespace

BatchResult solve_batch(const Problem& problem, const std::vector<Vector>& starts,
                        const SolverConfig& config, Execution exec) {
  BatchResult out;
  out.runs.resize(starts.size());
  out.errors.resize(starts.size());
  const auto n = static_cast<std::ptrdiff_t>(starts.size());
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      solve_one(problem, starts[static_cast<std::size_t>(i)], config, out,
                static_cast<std::size_t>(i));
    }
    return out;
  }
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    solve_one(problem, starts[static_cast<std::size_t>(i)], config, out,
              static_cast<std::size_t>(i));
  }
  return out;
}

std::vector<Vector> map_points(const PointMap& map, const std::vector<Vector>& points,
                               Execution exec) {
  std::vector<Vector> images(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      try {
        images[u] = map(points[u]);
      } catch (...) {
        errors[u] = std::current_exception();
      }
    }
  } else {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      try {
        images[u] = map(points[u]);
      } catch (...) {
        errors[u] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return images;
}

std::vector<bool> nondominated_mask(const std::vector<Vector>& values, Execution exec) {
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  // std::vector<bool> packs bits; write through a char buffer in the parallel loop.
  std::vector<char> keep(values.size(), 1);
  auto row = [&](std::ptrdiff_t i) {
    const auto& vi = values[static_cast<std::size_t>(i)];
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      if (j != i && dominates(values[static_cast<std::size_t>(j)], vi)) {
        keep[static_cast<std::size_t>(i)] = 0;
        return;
      }
    }
  };
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) row(i);
  } else {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) row(i);
  }
  return {keep.begin(), keep.end()};
}

}  // namespace nsmop
