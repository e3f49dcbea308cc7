//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

// One PASS/FAIL line per acceptance criterion. Exit status is the number
// of failed criteria.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "commands.hpp"
#include "test_support.hpp"

using namespace d2mis;
using namespace d2mis::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %d [%s]: %s (%s; %.1f s)\n", id, title, o.pass ? "PASS" : "FAIL", o.detail.c_str(), s);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::vector<std::pair<std::string, Graph>> structured_fixtures() {
  std::vector<std::pair<std::string, Graph>> f{
      {"empty", Graph{}},
      {"single", edgeless_graph(1)},
      {"edgeless10", edgeless_graph(10)},
      {"path5", path_graph(5)},
      {"path100", path_graph(100)},
      {"star5", star_graph(5)},
      {"star50", star_graph(50)},
      {"K4", complete_graph(4)},
      {"K30", complete_graph(30)},
      {"tree6", small_tree()},
      {"grid2d_1_1", pattern_symmetrize(gen_grid2d(1, 1), true)},
      {"grid2d_4_4", pattern_symmetrize(gen_grid2d(4, 4), true)},
      {"grid2d_40_30", pattern_symmetrize(gen_grid2d(40, 30), true)},
      {"laplace3d_10", pattern_symmetrize(gen_laplace3d(10, 10, 10), true)},
      {"laplace3d_30", pattern_symmetrize(gen_laplace3d(30, 30, 30), true)},
  };
  for (const char* name : {"path5.mtx", "edgeless10.mtx", "singular.mtx", "tridiag3.mtx"})
    f.emplace_back(name, pattern_symmetrize(read_matrix_market(std::string(D2MIS_TEST_DATA_DIR) + "/" + name), true));
  return f;
}

Graph random_fixture(std::uint64_t k) { return random_graph(1000 + k, 200, 0.3); }

constexpr PriorityScheme all_schemes[] = {PriorityScheme::Fixed, PriorityScheme::XorHash, PriorityScheme::XorStarHash};

Outcome validity_suite() {
  std::size_t checked = 0, bad = 0;
  auto check = [&](const Graph& g) {
    for (auto s : all_schemes) {
      Mis2Config cfg;
      cfg.priority_scheme = s;
      const auto r = mis2(g, cfg);
      ++checked;
      if (!verify::is_distance2_independent(g, r.in_set) || !verify::is_maximal_distance2(g, r.in_set) ||
          !verify::verify_via_squared(g, r.in_set))
        ++bad;
    }
  };
  for (std::uint64_t k = 0; k < 1000; ++k) check(random_fixture(k));
  for (const auto& [name, g] : structured_fixtures()) check(g);
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " outputs valid"};
}

Outcome determinism() {
  struct Case {
    SparseMatrix a;
    Graph g;
  };
  std::vector<Case> cases;
  cases.push_back({gen_laplace3d(30, 30, 30), {}});
  std::mt19937_64 rng(5);
  for (std::uint64_t k = 0; k < 3; ++k) cases.push_back({random_spd(rng, random_graph(rng, 200, 0.05 + 0.1 * k)), {}});
  for (auto& c : cases) c.g = pattern_symmetrize(c.a, true);

  std::size_t compared = 0, mismatched = 0;
  for (auto& c : cases) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector b(c.a.num_rows);
    for (auto& v : b) v = u(rng);
    std::vector<std::uint8_t> mis_ref;
    AggregateLabels agg_ref;
    ClusterGSPrecond p_ref;
    Vector x_ref;
    bool first = true;
    for (int t : thread_counts()) {
      par::thread_scope scope(t);
      for (int rep = 0; rep < 5; ++rep) {
        auto mis = mis2(c.g).in_set;
        auto agg = aggregate_mis2(c.g);
        auto p = cluster_gs_setup(c.a, ClusterScheme::Mis2Agg);
        Vector x(c.a.num_rows, 0.0);
        gs_sweep(p, c.a, x, b, SweepDirection::Forward);
        gs_sweep(p, c.a, x, b, SweepDirection::Backward);
        if (first) {
          mis_ref = mis;
          agg_ref = agg;
          p_ref = p;
          x_ref = x;
          first = false;
          continue;
        }
        ++compared;
        const bool same = mis == mis_ref && agg == agg_ref && p.labels == p_ref.labels &&
                          p.coarse_coloring == p_ref.coarse_coloring && p.cluster_rows == p_ref.cluster_rows &&
                          x == x_ref;
        mismatched += !same;
      }
    }
  }
  return {mismatched == 0, std::to_string(compared) + " repeated runs over threads {1,2," +
                               std::to_string(thread_counts().back()) + "}, " + std::to_string(mismatched) +
                               " differ"};
}

struct ScalingNumbers {
  Mis2Result r50, r100, fixed100;
};

const ScalingNumbers& scaling() {
  static const ScalingNumbers n = [] {
    ScalingNumbers s;
    Mis2Config star;
    s.r50 = mis2(pattern_symmetrize(gen_laplace3d(50, 50, 50), true), star);
    const Graph g100 = pattern_symmetrize(gen_laplace3d(100, 100, 100), true);
    s.r100 = mis2(g100, star);
    Mis2Config fixed;
    fixed.priority_scheme = PriorityScheme::Fixed;
    s.fixed100 = mis2(g100, fixed);
    return s;
  }();
  return n;
}

Outcome laplace_scaling() {
  const auto& s = scaling();
  const double d50 = std::abs(double(s.r50.size()) - 11469.0) / 11469.0;
  const double d100 = std::abs(double(s.r100.size()) - 90041.0) / 90041.0;
  const bool ok = d50 <= 0.05 && d100 <= 0.05 && s.r50.iterations <= 14 && s.r100.iterations <= 14 &&
                  s.r100.iterations <= s.r50.iterations + 2;
  char buf[256];
  std::snprintf(buf, sizeof buf, "50^3: size %zu (%+.2f%%) in %zu its; 100^3: size %zu (%+.2f%%) in %zu its",
                s.r50.size(), 100.0 * (double(s.r50.size()) - 11469.0) / 11469.0, s.r50.iterations, s.r100.size(),
                100.0 * (double(s.r100.size()) - 90041.0) / 90041.0, s.r100.iterations);
  return {ok, buf};
}

Outcome priority_ordering() {
  const auto& s = scaling();
  return {s.r100.iterations <= s.fixed100.iterations,
          "100^3 iterations: xorstar " + std::to_string(s.r100.iterations) + ", fixed " +
              std::to_string(s.fixed100.iterations)};
}

Outcome aggregation_completeness() {
  std::size_t checked = 0, bad = 0;
  auto check = [&](const Graph& g) {
    for (int alg = 0; alg < 2; ++alg) {
      const AggregateLabels agg = alg == 0 ? coarsen_basic(g) : aggregate_mis2(g);
      std::vector<std::uint8_t> phase1(g.num_vertices, 0);
      for (index_t k = 0; k < agg.phase1_roots; ++k) phase1[agg.roots[k]] = 1;
      ++checked;
      if (agg.count_unassigned() != 0 || !verify::aggregates_connected(g, agg.label, agg.num_aggregates) ||
          !verify::is_valid_mis2(g, phase1))
        ++bad;
    }
  };
  for (const auto& [name, g] : structured_fixtures()) check(g);
  for (std::uint64_t k = 0; k < 1000; ++k) check(random_fixture(k));
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " aggregations complete"};
}

Outcome gs_oracle() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Graph g = random_graph(rng, static_cast<index_t>(10 + rng() % 91), 0.02 + 0.2 * (k % 5) / 4.0);
    const SparseMatrix a = random_spd(rng, g);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector b(a.num_rows);
    for (auto& v : b) v = u(rng);
    const ClusterGSPrecond p = single_cluster(a);
    Vector x(a.num_rows, 0.0), ref(a.num_rows, 0.0);
    gs_sweep(p, a, x, b, SweepDirection::Forward);
    scalar_gs(a, ref, b, false);
    worst = std::max(worst, rel_diff(x, ref));
    gs_sweep(p, a, x, b, SweepDirection::Backward);
    scalar_gs(a, ref, b, true);
    worst = std::max(worst, rel_diff(x, ref));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max relative difference %.3g over 20 systems", worst);
  return {worst <= 1e-14, buf};
}

Outcome point_vs_cluster() {
  cli::GsBenchOptions o;
  o.input = "laplace3d:32,32,32";
  o.solver = "gmres";
  o.tol = 1e-8;
  o.restart = 50;
  o.max_iter = 800;
  o.scheme = "point";
  const auto point = cli::cmd_gs_bench(o, {});
  o.scheme = "cluster";
  const auto cluster = cli::cmd_gs_bench(o, {});
  const auto& pr = point.report["runs"][0];
  const auto& cr = cluster.report["runs"][0];
  const std::size_t pi = pr["iterations"], ci = cr["iterations"];
  const bool ok = pr["converged"].get<bool>() && cr["converged"].get<bool>() && ci <= pi;
  return {ok, "GMRES iterations: point " + std::to_string(pi) + ", cluster " + std::to_string(ci) + " (" +
                  std::to_string(cr["num_clusters"].get<std::size_t>()) + " clusters)"};
}

Outcome sgs_symmetry() {
  std::vector<SparseMatrix> fixtures{gen_grid2d(12, 9), gen_laplace3d(10, 10, 10),
                                     read_matrix_market(std::string(D2MIS_TEST_DATA_DIR) + "/tridiag3.mtx")};
  std::mt19937_64 rng(8);
  for (int k = 0; k < 3; ++k) fixtures.push_back(random_spd(rng, random_graph(rng, 150, 0.05)));
  double worst = 0.0;
  std::size_t probes = 0;
  for (const auto& a : fixtures) {
    for (auto s : {ClusterScheme::Point, ClusterScheme::BasicCoarsen, ClusterScheme::Mis2Agg}) {
      const auto p = cluster_gs_setup(a, s);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      for (int pair = 0; pair < 20; ++pair) {
        Vector b1(a.num_rows), b2(a.num_rows);
        for (auto& v : b1) v = u(rng);
        for (auto& v : b2) v = u(rng);
        const Vector m1 = sgs_apply(p, a, b1), m2 = sgs_apply(p, a, b2);
        double l = 0.0, r = 0.0;
        for (std::size_t i = 0; i < b1.size(); ++i) {
          l += m1[i] * b2[i];
          r += b1[i] * m2[i];
        }
        worst = std::max(worst, std::abs(l - r) / std::max(std::abs(l), std::abs(r)));
        ++probes;
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max relative asymmetry %.3g over %zu probes", worst, probes);
  return {worst <= 1e-12, buf};
}

Outcome packing() {
  std::atomic<std::uint64_t> failures_seen{0};
  std::uint64_t total = 0;
  for (std::uint64_t n : {1ull, 6ull, 255ull, 4096ull}) {
    const status_codec<std::uint32_t> c(n);
    const std::uint64_t np = std::uint64_t{c.max_priority()} + 1;
    total += np * n;
    // Each chunk of priorities checks its own range and the boundary to the next.
    constexpr std::uint64_t chunk = 1 << 16;
    const std::uint64_t nchunks = (np + chunk - 1) / chunk;
    par::parallel_for(nchunks, [&](std::size_t k) {
      std::uint64_t bad = 0;
      const std::uint64_t lo = k * chunk, hi = std::min(np, lo + chunk);
      std::uint32_t prev = c.in;
      if (lo > 0) prev = c.pack(static_cast<std::uint32_t>(lo - 1), static_cast<std::uint32_t>(n - 1));
      for (std::uint64_t p = lo; p < hi; ++p) {
        for (std::uint64_t id = 0; id < n; ++id) {
          const std::uint32_t w = c.pack(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(id));
          bad += (w <= prev) | (w == c.out) | (c.priority_of(w) != p) | (c.id_of(w) != id);
          prev = w;
        }
      }
      if (bad) failures_seen += bad;
    });
  }
  return {failures_seen == 0, std::to_string(total) + " (priority, id) pairs on a 32-bit word, " +
                                  std::to_string(failures_seen.load()) + " violations"};
}

} // namespace

int main() {
  std::printf("d2mis %s acceptance, %d threads available\n", version_string, par::max_threads());
  report(1, "validity suite", validity_suite);
  report(2, "determinism", determinism);
  report(3, "laplace scaling", laplace_scaling);
  report(4, "priority ordering", priority_ordering);
  report(5, "aggregation completeness", aggregation_completeness);
  report(6, "GS oracle equivalence", gs_oracle);
  report(7, "point vs cluster SGS", point_vs_cluster);
  report(8, "SGS symmetry", sgs_symmetry);
  report(9, "packing correctness", packing);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
