// Acceptance checks, one line per criterion. `acceptance` runs all of them;
// `acceptance --criterion N` runs one. Exit status is 0 iff every selected
// criterion passed.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "nsmop/cli.hpp"
#include "nsmop/descent.hpp"
#include "nsmop/direction.hpp"
#include "nsmop/minnorm.hpp"
#include "nsmop/parallel.hpp"
#include "nsmop/problems.hpp"
#include "nsmop/subdivision.hpp"
#include "nsmop/validation.hpp"
#include "support.hpp"

using namespace nsmop;
using testsupport::v2;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool near(double got, double want, double tol) { return std::abs(got - want) <= tol; }

// 1. Hand-picked bundle of the kinked pair at (0.75, 0).
void criterion1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  Problem p = problems::example_2_5();
  const Vector x = v2(0.75, 0.0);
  const double eps = 0.2, c = 0.25;
  const Bundle w{v2(-0.12, -2.04), v2(1.88, -1.0)};
  const Vector v = min_norm_point(w).v;
  const double nv = v.norm();
  const double cnorm = -c * v.squaredNorm();
  o.require(near(cnorm, -0.7696, 1e-3), "-c||v||^2");
  const Vector fx = p.values(x);
  const AcceptanceCheck chk = check_acceptance(p, x, fx, v, eps, c);
  const double lhs = chk.f_trial[1];
  const double rhs = chk.threshold[1];
  o.require(near(lhs, 0.6101, 1e-3) && near(rhs, 0.4748, 1e-3) && lhs > rhs,
            "f2 test values");
  const NewSubgradient ns = find_new_subgradient(p, 1, x, v, eps, c, 64);
  o.require(near(ns.t, 0.5 * eps / nv, 1e-15), "probe t");
  o.require(near(ns.xi[0], 1.4077, 1e-3) && near(ns.xi[1], 1.0, 1e-3), "xi'");
  const double ip = v.dot(ns.xi);
  o.require(near(ip, 0.4172, 1e-3), "<v,xi'>");
  Bundle w2 = w;
  w2.push_back(ns.xi);
  const Vector v2n = min_norm_point(w2).v;
  o.require(check_acceptance(p, x, fx, v2n, eps, c).violating.empty(), "enriched direction");
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, "runtime");
  o.detail << (o.pass ? "" : " | ") << "-c||v||^2=" << cli::format_double(cnorm)
           << " lhs=" << lhs << " rhs=" << rhs << " xi'=(" << ns.xi[0] << "," << ns.xi[1]
           << ") <v,xi'>=" << ip << " t=" << secs << "s";
}

// 2. Exact hull geometry of the kinked pair.
void criterion2(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  using validation::example_2_5_subdifferentials;
  using validation::exact_min_norm_over_hull;
  const double a = exact_min_norm_over_hull(example_2_5_subdifferentials(v2(1.5, 0), 0.0)).midpoint_sq();
  const double b = exact_min_norm_over_hull(example_2_5_subdifferentials(v2(1.5, 0), 0.2)).midpoint_sq();
  const double z = exact_min_norm_over_hull(example_2_5_subdifferentials(v2(0.5, 0), 0.2)).midpoint();
  o.require(near(a, 3.7692, 1e-2), "Clarke value");
  o.require(near(b, 2.4433, 1e-2), "eps value");
  o.require(near(z, 0.0, 1e-6), "zero value");
  const double secs = seconds_since(t0);
  o.require(secs < 5.0, "runtime");
  o.detail << (o.pass ? "" : " | ") << "clarke=" << a << " eps0.2=" << b << " at(0.5,0)=" << z
           << " t=" << secs << "s";
}

// 3. Kinked pair a=10, b=0.5 near the origin.
void criterion3(Outcome& o) {
  Problem p = problems::example_3_8(10.0, 0.5);
  SolverConfig cfg;
  cfg.epsilon = 1e-3;
  const DirectionOutcome d = compute_descent_direction(p, v2(1e-4, 1e-4), cfg);
  o.require(d.status == DirectionStatus::critical, "status");
  o.require(d.iterations <= 2, "passes");
  const Bundle got = d.subgradients();
  const std::vector<Vector> want{v2(10, -0.5), v2(-1.9998, -1.9998), v2(-10, 1.5)};
  bool match = got.size() == want.size();
  std::vector<bool> used(got.size(), false);
  for (const auto& w : want) {
    bool found = false;
    for (std::size_t i = 0; i < got.size() && !found; ++i) {
      if (!used[i] && (got[i] - w).cwiseAbs().maxCoeff() <= 1e-3) used[i] = found = true;
    }
    match = match && found;
  }
  o.require(match, "bundle");
  o.detail << (o.pass ? "" : " | ") << "passes=" << d.iterations << " ||v||=" << d.v.norm()
           << " bundle=";
  for (const auto& g : got) o.detail << "(" << g[0] << "," << g[1] << ")";
}

// 4. Descent invariants on random starts.
void criterion4(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Problem> probs;
  probs.push_back(problems::example_2_5());
  probs.push_back(problems::example_3_8());
  probs.push_back(problems::crescent_mifflin2());
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  SolverConfig cfg;
  long steps = 0, directions = 0, members = 0, bad_decrease = 0, bad_local = 0, bad_norm = 0;
  int not_critical = 0;
  for (int run = 0; run < 500; ++run) {
    Problem& p = probs[static_cast<std::size_t>(run % 3)];
    const Vector start = v2(u(rng), u(rng));
    SolverRun r;
    try {
      r = solve(p, start, cfg, [&](const IterationEvent& ev) {
        ++directions;
        const DirectionOutcome& d = *ev.direction;
        for (const auto& m : d.bundle) {
          ++members;
          if ((m.source - *ev.x).norm() > cfg.epsilon * (1 + 1e-12)) ++bad_local;
        }
        for (std::size_t l = 1; l < d.trace.size(); ++l)
          if (!(d.trace[l].v_norm < d.trace[l - 1].v_norm)) ++bad_norm;
        if (!ev.step) return;
        ++steps;
        // Re-evaluate on a clone so the check does not rely on cached values.
        Problem fresh = p.clone();
        const Vector f0 = fresh.values(*ev.x);
        const Vector f1 = fresh.values(*ev.x_next);
        const double nv = d.v.norm();
        for (Eigen::Index i = 0; i < f0.size(); ++i)
          if (!(f1[i] <= f0[i] - cfg.armijo_c * ev.step->step * nv * nv)) ++bad_decrease;
      });
    } catch (const std::exception& e) {
      ++not_critical;
      continue;
    }
    if (r.stop_reason != StopReason::critical) ++not_critical;
  }
  const double secs = seconds_since(t0);
  o.require(bad_decrease == 0, "sufficient decrease");
  o.require(bad_local == 0, "eps-locality");
  o.require(bad_norm == 0, "norm decrease");
  o.require(not_critical == 0, "termination");
  o.require(secs < 60.0, "runtime");
  o.detail << (o.pass ? "" : " | ") << "500 runs, " << steps << " steps, " << directions
           << " direction calls, " << members << " bundle members; violations: decrease="
           << bad_decrease << " locality=" << bad_local << " norm=" << bad_norm
           << " non-critical=" << not_critical << " t=" << secs << "s";
}

// 5. Min-norm against the simplex grid.
void criterion5(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_gap = 0.0, worst_sq_gap = 0.0, worst_half = -1e300;
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 1 + trial % 4;
    const int n = 1 + (trial / 4) % 3;
    Bundle w;
    for (int i = 0; i < m; ++i) {
      Vector x(n);
      for (int j = 0; j < n; ++j) x[j] = u(rng);
      w.push_back(x);
    }
    const MinNormSolution s = min_norm_point(w);
    const double grid = validation::simplex_grid_min_norm(w, 1e-3);
    worst_gap = std::max(worst_gap, std::abs(std::sqrt(s.norm_sq) - grid));
    worst_sq_gap = std::max(worst_sq_gap, std::abs(s.norm_sq - grid * grid));
    for (const auto& xi : w) worst_half = std::max(worst_half, s.v.dot(xi) + s.v.squaredNorm());
  }
  const double secs = seconds_since(t0);
  // Compared on the squared norm (the quantity min_norm_point reports), at
  // 1e-4. The unsquared gap is dominated by bundles whose hull contains the
  // origin, where the lattice optimum sits ~pitch * ||xi|| away from zero.
  o.require(worst_sq_gap <= 1e-4, "grid gap on norm_sq");
  o.require(worst_half <= 1e-10, "half-space");
  o.require(secs < 30.0, "runtime");
  o.detail << (o.pass ? "" : " | ") << "1000 bundles, max |norm_sq-grid^2|=" << worst_sq_gap
           << ", max |norm-grid|=" << worst_gap
           << ", max <v,xi>+||v||^2=" << worst_half << " t=" << secs << "s";
}

double circle_distance(const Vector& x, const Vector& c) { return std::abs((x - c).norm() - 1.0); }

// 6. Demo trajectories on the Crescent / Mifflin 2 pair.
void criterion6(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  Problem p = problems::crescent_mifflin2();
  const auto starts = problems::crescent_mifflin2_starts();
  SolverConfig cfg;
  std::vector<SolverRun> runs;
  for (const auto& s : starts) runs.push_back(solve(p, s, cfg));
  for (std::size_t i = 0; i < 3; ++i)
    o.require(runs[i].stop_reason == StopReason::critical, "x" + std::to_string(i + 1) + " critical");
  const double d1 = circle_distance(runs[0].final_point, v2(0, 1));
  const double d3 = circle_distance(runs[2].final_point, v2(0, 0));
  const double d3_upper = circle_distance(runs[2].final_point, v2(0, 1));
  o.require(d1 <= 0.05, "x1 endpoint near S1+(0,1)");
  o.require(d3 <= 0.05, "x3 endpoint near S1");
  SolverConfig sched = cfg;
  sched.epsilon_schedule = {1e-1, 1e-2, 1e-3};
  const SolverRun staged = solve_eps_decreasing(p, starts[1], sched);
  o.require(staged.stop_reason == StopReason::critical, "x2 schedule critical");
  o.require(staged.counters.outer_iterations < runs[1].counters.outer_iterations,
            "schedule uses fewer iterations");
  const double secs = seconds_since(t0);
  o.require(secs < 10.0, "runtime");
  auto pt = [](const Vector& x) {
    return "(" + cli::format_double(x[0]) + "," + cli::format_double(x[1]) + ")";
  };
  o.detail << (o.pass ? "" : " | ") << "x1->" << pt(runs[0].final_point) << " dist(S1+(0,1))=" << d1
           << "; x3->" << pt(runs[2].final_point) << " dist(S1)=" << d3
           << " dist(S1+(0,1))=" << d3_upper << "; x2 iterations single=" << runs[1].counters.outer_iterations
           << " schedule=" << staged.counters.outer_iterations << " t=" << secs << "s";
}

// 7. Subdivision cover of problem 16.
void criterion7(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  auto entry = problems::table1_entry(16);
  nsmop::Box bounds{v2(-3.1, -3.1), v2(3.0, 3.0)};
  SolverConfig cfg;
  const auto cover = subdivision::pareto_cover(entry.problem, cfg, subdivision::from_bounds(bounds),
                                               9, 15, 5);
  o.require(!cover.collection.boxes.empty(), "nonempty cover");
  // Mutual non-domination of the front, checked on raw values.
  std::vector<std::array<double, 2>> front;
  for (std::size_t i = 0; i < cover.image_values.size(); ++i)
    if (cover.front[i]) front.push_back({cover.image_values[i][0], cover.image_values[i][1]});
  long dominated_pairs = 0;
  for (const auto& a : front)
    for (const auto& b : front)
      if (a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1])) ++dominated_pairs;
  o.require(dominated_pairs == 0 && !front.empty(), "front non-dominated");
  long uncovered = 0;
  // Every final image, including any that left the root.
  for (const auto& x : cover.images) {
    bool in = false;
    for (const auto& b : cover.collection.boxes) {
      if (b.contains(x)) {
        in = true;
        break;
      }
    }
    if (!in) ++uncovered;
  }
  o.require(uncovered == 0, "images covered");
  const double secs = seconds_since(t0);
  o.require(secs < 600.0, "runtime");
  o.detail << (o.pass ? "" : " | ") << cover.collection.boxes.size() << " boxes, "
           << cover.images.size() << " images (" << cover.escaped << " escaped, " << uncovered
            << " uncovered, " << cover.uncovered
           << " of them in cells dropped by an earlier selection), front " << front.size() << " points, dominated pairs "
           << dominated_pairs << " t=" << secs << "s";
}

// 8. Benchmark grid over the 18 problems.
void criterion8(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto dir = std::filesystem::temp_directory_path() / "nsmop_acceptance_bench";
  std::filesystem::remove_all(dir);
  cli::BenchOptions opts;
  opts.mode = "single-eps";
  opts.out = dir.string();
  std::ostringstream log;
  const int rc = cli::cmd_bench(opts, log);
  o.require(rc == 0, "bench exit code");
  std::ifstream report(dir / "bench_report.csv");
  std::string line;
  std::getline(report, line);
  int rows = 0, in_band = 0, all_critical = 0;
  double min_ratio = 1e300, max_ratio = 0.0;
  while (std::getline(report, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 8) continue;
    ++rows;
    const double ratio = std::stod(f[4]);
    min_ratio = std::min(min_ratio, ratio);
    max_ratio = std::max(max_ratio, ratio);
    if (f[5] == "1") ++in_band;
    if (f[6] == f[7] && f[7] == "100") ++all_critical;
  }
  o.require(rows == 18, "18 problems");
  o.require(in_band == 18, "iterations within x10 of reference");
  o.require(all_critical == 18, "100% critical");
  const double secs = seconds_since(t0);
  o.detail << (o.pass ? "" : " | ") << rows << " problems, " << all_critical
           << " fully critical, " << in_band << " in band, ratio range [" << min_ratio << ", "
           << max_ratio << "] t=" << secs << "s";
}

const std::vector<std::pair<const char*, void (*)(Outcome&)>> kCriteria{
    {"hand-picked bundle regression", criterion1},
    {"quadratic pair exact geometry", criterion2},
    {"parametrized kink regression", criterion3},
    {"descent invariant suite", criterion4},
    {"min-norm oracle equivalence", criterion5},
    {"demo trajectories", criterion6},
    {"subdivision cover", criterion7},
    {"benchmark grid", criterion8},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  if (only < 0 || only > static_cast<int>(kCriteria.size())) {
    std::cerr << "usage: acceptance [--criterion 1..8]\n";
    return 2;
  }
  bool all = true;
  for (std::size_t k = 0; k < kCriteria.size(); ++k) {
    if (only != 0 && static_cast<int>(k) + 1 != only) continue;
    Outcome o;
    try {
      kCriteria[k].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << k + 1 << " [" << kCriteria[k].first << "]: "
              << (o.pass ? "PASS" : "FAIL") << "  " << o.detail.str() << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
