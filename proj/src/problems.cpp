#include "nsmop/problems.hpp"

#include <algorithm>
#include <cctype>

namespace nsmop::problems {
namespace {

Box square(double lo, double hi) {
  Box b{Vector(2), Vector(2)};
  b.lower << lo, lo;
  b.upper << hi, hi;
  return b;
}

Box rect(double lo1, double hi1, double lo2, double hi2) {
  Box b{Vector(2), Vector(2)};
  b.lower << lo1, lo2;
  b.upper << hi1, hi2;
  return b;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

constexpr const char* kMakela =
    "Makela & Neittaanmaki (1992), Nonsmooth Optimization, academic test set; "
    "bi-objective pairing after Makela, Karmitsa & Wilppu (2014)";

struct Row {
  int number;
  TestFunction (*first)();
  TestFunction (*second)();
  Box box;
};

std::vector<Row> rows() {
  return {
      {1, cb3, dem, square(-3, 3)},        {2, cb3, ql, square(-3, 3)},
      {3, cb3, lq, square(0.5, 1.5)},      {4, cb3, mifflin1, square(-3, 3)},
      {5, cb3, wolfe, square(-3, 3)},      {6, dem, ql, square(-3, 3)},
      {7, dem, lq, square(-3, 3)},         {8, dem, mifflin1, square(-3, 3)},
      {9, dem, wolfe, square(-3, 3)},      {10, ql, lq, square(-3, 3)},
      {11, ql, mifflin1, square(-3, 3)},   {12, ql, wolfe, square(-3, 3)},
      {13, lq, mifflin1, rect(0.5, 1.5, -0.5, 1.0)},
      {14, lq, wolfe, square(-3, 3)},      {15, mifflin1, wolfe, square(-3, 3)},
      {16, crescent, mifflin2, square(-0.5, 1.5)},
      {17, mifflin2, wf, square(-3, 3)},   {18, mifflin2, spiral, square(-3, 3)},
  };
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

CatalogEntry build(const Row& row) {
  std::vector<TestFunction> components{row.first(), row.second()};
  std::string slug = lower(components[0].name) + "-" + lower(components[1].name);
  std::vector<ObjectiveOracle> objs;
  for (const auto& c : components) objs.push_back(c.oracle());
  Problem problem("table1-" + std::to_string(row.number) + ":" + slug, 2, std::move(objs), row.box);
  return CatalogEntry{row.number, std::move(slug), kMakela, std::move(problem),
                      std::move(components)};
}

Problem pair_problem(std::string name, const TestFunction& a, const TestFunction& b,
                     std::optional<Box> box = std::nullopt) {
  std::vector<ObjectiveOracle> objs;
  objs.push_back(a.oracle());
  objs.push_back(b.oracle());
  return Problem(std::move(name), 2, std::move(objs), std::move(box));
}

}  // namespace

Problem example_2_5() {
  return pair_problem("example-2-5", quadratic_distance(vec2(1.0, 1.0)), example_2_5_f2());
}

Problem example_3_8(double a, double b) {
  if (a == 0.0 || b == 0.0) throw ConfigError("example_3_8: a and b must be nonzero");
  return pair_problem("example-3-8", quadratic_distance(vec2(1.0, 1.0)), example_3_8_f2(a, b));
}

Problem crescent_mifflin2() {
  return pair_problem("crescent-mifflin2", crescent(), mifflin2(), square(-0.5, 1.5));
}

std::vector<Vector> crescent_mifflin2_starts() {
  return {vec2(0.0, -0.3), vec2(0.6, 1.0), vec2(-1.0, -0.2)};
}

std::vector<CatalogEntry> table1_suite() {
  std::vector<CatalogEntry> out;
  for (const auto& r : rows()) out.push_back(build(r));
  return out;
}

CatalogEntry table1_entry(int number) {
  for (const auto& r : rows()) {
    if (r.number == number) return build(r);
  }
  throw Error("no benchmark problem number " + std::to_string(number));
}

std::vector<Vector> grid_points(const Box& box, int per_axis) {
  if (per_axis < 1) throw ConfigError("grid_points: per_axis must be >= 1");
  const auto n = box.lower.size();
  std::size_t total = 1;
  for (Eigen::Index i = 0; i < n; ++i) total *= static_cast<std::size_t>(per_axis);
  std::vector<Vector> pts;
  pts.reserve(total);
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (std::size_t p = 0; p < total; ++p) {
    Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int k = idx[static_cast<std::size_t>(i)];
      x[i] = per_axis == 1 ? 0.5 * (box.lower[i] + box.upper[i])
                           : box.lower[i] + (box.upper[i] - box.lower[i]) * k / (per_axis - 1);
    }
    pts.push_back(std::move(x));
    // Last coordinate varies fastest.
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      auto& k = idx[static_cast<std::size_t>(i)];
      if (++k < per_axis) break;
      k = 0;
    }
  }
  return pts;
}

Problem make_problem(const std::string& selector) {
  const std::string s = lower(selector);
  if (s == "example-2-5") return example_2_5();
  if (s == "example-3-8") return example_3_8();
  if (s == "crescent-mifflin2") return crescent_mifflin2();
  std::string num = s;
  if (num.rfind("table1-", 0) == 0) num = num.substr(7);
  if (!num.empty() && std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(c); })) {
    const int n = std::stoi(num);
    if (n >= 1 && n <= 18) return std::move(table1_entry(n).problem);
  }
  for (const auto& r : rows()) {
    CatalogEntry e = build(r);
    if (e.slug == s) return std::move(e.problem);
  }
  throw Error("unknown problem '" + selector + "'");
}

std::vector<std::string> problem_names() {
  std::vector<std::string> names{"example-2-5", "example-3-8", "crescent-mifflin2"};
  for (int i = 1; i <= 18; ++i) names.push_back(std::to_string(i));
  return names;
}

}  // namespace nsmop::problems
