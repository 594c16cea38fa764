#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nsmop/core.hpp"

namespace nsmop::problems {

/// A scalar test function with its hand-derived subgradient selection and a
/// piece label identifying the smooth region a point lies in. Two points with
/// the same label are in the same smooth piece; the label changes across
/// every nondifferentiable set.
struct TestFunction {
  std::string name;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> subgradient;
  std::function<int(const Vector&)> piece;

  ObjectiveOracle oracle() const;
};

// Component functions on R^2. Selections at kinks: max-structures return the
// gradient of the first branch attaining the maximum; |u| uses sign(0) = 0.
TestFunction cb3();
TestFunction dem();
TestFunction ql();
TestFunction lq();
TestFunction mifflin1();
TestFunction mifflin2();
TestFunction wolfe();
TestFunction crescent();
TestFunction wf();
TestFunction spiral();

TestFunction quadratic_distance(Vector center);  // ||x - center||^2
TestFunction example_2_5_f2();                   // x1^2 + |x2|
TestFunction example_3_8_f2(double a, double b);  // |x2 - a|x1|| + b x2

/// ((x1-1)^2 + (x2-1)^2, x1^2 + |x2|). At x2 = 0 the second oracle returns (2 x1, 0).
Problem example_2_5();

/// ((x1-1)^2 + (x2-1)^2, |x2 - a|x1|| + b x2), a, b nonzero.
Problem example_3_8(double a = 10.0, double b = 0.5);

/// (Crescent, Mifflin 2) on R^2; nondifferentiable on S^1 and S^1 + (0,1).
Problem crescent_mifflin2();

/// Shipped demo starts for crescent_mifflin2.
std::vector<Vector> crescent_mifflin2_starts();

struct CatalogEntry {
  int number = 0;            // 1..18
  std::string slug;          // e.g. "cb3-dem"
  std::string literature;    // source of the component formulas
  Problem problem;
  std::vector<TestFunction> components;
};

/// The 18 bi-objective benchmark problems with their starting boxes.
std::vector<CatalogEntry> table1_suite();

CatalogEntry table1_entry(int number);

/// Inclusive uniform lattice with `per_axis` points per coordinate over the
/// box, first coordinate varying slowest.
std::vector<Vector> grid_points(const Box& box, int per_axis = 10);

/// Resolves "example-2-5", "example-3-8", "crescent-mifflin2", a benchmark
/// number ("7", "table1-7") or slug ("dem-lq"). Throws Error if unknown.
Problem make_problem(const std::string& selector);

/// Names accepted by make_problem, one per problem.
std::vector<std::string> problem_names();

}  // namespace nsmop::problems
