#include <doctest.h>

#include <random>

#include "nsmop/parallel.hpp"
#include "nsmop/problems.hpp"
#include "support.hpp"

using namespace nsmop;
using testsupport::v2;

TEST_CASE("batch solve: serial and parallel agree, counters per run") {
  auto entry = problems::table1_entry(16);
  const auto starts = problems::grid_points(*entry.problem.benchmark_box(), 5);
  SolverConfig cfg;
  auto a = solve_batch(entry.problem, starts, cfg, Execution::serial);
  auto b = solve_batch(entry.problem, starts, cfg, Execution::parallel);
  REQUIRE(a.all_succeeded());
  REQUIRE(b.all_succeeded());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    CHECK(a.runs[i]->final_point == b.runs[i]->final_point);
    CHECK(a.runs[i]->counters == b.runs[i]->counters);
    // Same run on its own clone reproduces the counters.
    Problem own = entry.problem.clone();
    CHECK(solve(own, starts[i], cfg).counters == a.runs[i]->counters);
  }
  // The shared instance was never touched.
  CHECK(entry.problem.snapshot_counters() == CounterSnapshot{});
}

TEST_CASE("batch solve records errors per start") {
  Problem p = problems::crescent_mifflin2();
  SolverConfig cfg;
  std::vector<Vector> starts{v2(0, 0), Vector::Zero(3), v2(0.5, 0.5)};
  auto r = solve_batch(p, starts, cfg);
  CHECK_FALSE(r.all_succeeded());
  CHECK(r.runs[0].has_value());
  CHECK_FALSE(r.runs[1].has_value());
  CHECK_FALSE(r.errors[1].empty());
  CHECK(r.runs[2].has_value());
}

TEST_CASE("map_points keeps order and rethrows the lowest failure") {
  std::vector<Vector> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(v2(i, -i));
  PointMap sq = [](const Vector& x) { return Vector(x.cwiseProduct(x)); };
  auto a = map_points(sq, pts, Execution::serial);
  auto b = map_points(sq, pts, Execution::parallel);
  REQUIRE(a.size() == 50);
  for (int i = 0; i < 50; ++i) {
    CHECK(a[i] == v2(i * i, i * i));
    CHECK(b[i] == a[i]);
  }
  PointMap bad = [](const Vector& x) -> Vector {
    if (x[0] >= 10) throw Error("at " + std::to_string(static_cast<int>(x[0])));
    return x;
  };
  for (auto exec : {Execution::serial, Execution::parallel}) {
    try {
      map_points(bad, pts, exec);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(std::string(e.what()) == "at 10");
    }
  }
}

TEST_CASE("non-dominated mask against a direct double loop") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vector> vals;
  for (int i = 0; i < 400; ++i) vals.push_back(v2(u(rng), u(rng)));
  vals.push_back(vals[3]);  // duplicates do not dominate each other
  auto s = nondominated_mask(vals, Execution::serial);
  auto p = nondominated_mask(vals, Execution::parallel);
  CHECK(s == p);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < vals.size(); ++j) {
      const bool le = vals[j][0] <= vals[i][0] && vals[j][1] <= vals[i][1];
      const bool lt = vals[j][0] < vals[i][0] || vals[j][1] < vals[i][1];
      dominated = dominated || (le && lt);
    }
    CHECK(s[i] == !dominated);
  }
  CHECK(s[3] == s[400]);
  CHECK(max_threads() >= 1);
}
