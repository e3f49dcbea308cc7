//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_TOOLS_COMMANDS_HPP
#define D2MIS_TOOLS_COMMANDS_HPP

// Subcommand implementations for the d2mis tool. Each command returns its
// exit code together with the report it produced, so tests can drive the
// commands without spawning a process.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "d2mis/d2mis.hpp"
#include "json.hpp"

namespace d2mis::cli {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

enum exit_code : int { exit_ok = 0, exit_hard_error = 1, exit_soft_failure = 2 };

struct CommandResult {
  int exit_code = exit_ok;
  json report;       // single-run commands
  std::string csv;   // multi-run studies
  std::string error; // diagnostic for stderr
};

struct CommonOptions {
  std::uint64_t seed = 0;
  int threads = 0;  // 0: hardware parallelism
};

struct Problem {
  std::string name;
  SparseMatrix matrix;
};

/// Resolves a generator spec or a Matrix Market path.
inline Problem load_problem(const std::string& input) {
  if (auto gen = generate_from_spec(input)) return {input, std::move(*gen)};
  if (!std::filesystem::exists(input)) throw invalid_input("input '" + input + "' is neither a generator spec nor a file");
  return {std::filesystem::path(input).filename().string(), read_matrix_market(input)};
}

inline std::string hash_constants_string() {
  std::ostringstream os;
  os << xorshift_shift_a << '/' << xorshift_shift_b << '/' << xorshift_shift_c << ";0x" << std::hex << std::uppercase
     << xorshift_star_multiplier;
  return os.str();
}

inline json report_header(const std::string& command, const CommonOptions& opt) {
  json h;
  h["schema_version"] = schema_version;
  h["tool"] = "d2mis";
  h["tool_version"] = version_string;
  h["command"] = command;
  std::ostringstream mult;
  mult << "0x" << std::hex << std::uppercase << xorshift_star_multiplier;
  h["hash"] = {{"xorshift_shifts", {xorshift_shift_a, xorshift_shift_b, xorshift_shift_c}},
               {"xorshift_star_multiplier", mult.str()}};
  h["seed"] = opt.seed;
  h["threads"] = par::max_threads();
  h["index_bits"] = std::numeric_limits<index_t>::digits;
  h["runs"] = json::array();
  return h;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline json graph_fields(const std::string& name, const Graph& g) {
  return {{"graph", name}, {"num_vertices", g.num_vertices}, {"num_edges", g.num_entries() / 2}};
}

struct Mis2Options {
  std::string input;
  PriorityScheme scheme = PriorityScheme::XorStarHash;
};

inline CommandResult cmd_mis2(const Mis2Options& o, const CommonOptions& common) {
  CommandResult res;
  res.report = report_header("mis2", common);
  const Problem prob = load_problem(o.input);
  const Graph g = pattern_symmetrize(prob.matrix, true);
  Mis2Config cfg;
  cfg.priority_scheme = o.scheme;
  cfg.seed = common.seed;

  const auto t0 = std::chrono::steady_clock::now();
  const Mis2Result r = mis2(g, cfg);
  const double ms = elapsed_ms(t0);
  const bool ok = verify::is_distance2_independent(g, r.in_set) && verify::is_maximal_distance2(g, r.in_set);

  json run = graph_fields(prob.name, g);
  run["kernel"] = "mis2";
  run["scheme"] = std::string(to_string(o.scheme));
  run["iterations"] = r.iterations;
  run["set_size"] = r.size();
  run["verified"] = ok;
  run["wall_time_ms"] = ms;
  res.report["runs"].push_back(run);
  if (!ok) {
    res.exit_code = exit_soft_failure;
    res.error = "mis2 output failed verification";
  }
  return res;
}

struct CoarsenOptions {
  std::string input;
  std::string algorithm = "agg";  // basic | agg
  std::string labels_path;        // empty: no CSV written
};

inline CommandResult cmd_coarsen(const CoarsenOptions& o, const CommonOptions& common, std::ostream* labels_out = nullptr) {
  CommandResult res;
  res.report = report_header("coarsen", common);
  if (o.algorithm != "basic" && o.algorithm != "agg") throw invalid_input("unknown algorithm '" + o.algorithm + "'");
  const Problem prob = load_problem(o.input);
  const Graph g = pattern_symmetrize(prob.matrix, true);
  Mis2Config cfg;
  cfg.seed = common.seed;

  const auto t0 = std::chrono::steady_clock::now();
  const AggregateLabels agg = o.algorithm == "basic" ? coarsen_basic(g, cfg) : aggregate_mis2(g, cfg);
  const double ms = elapsed_ms(t0);

  const auto sizes = agg.sizes();
  const std::size_t unassigned_count = agg.count_unassigned();
  const bool connected = verify::aggregates_connected(g, agg.label, agg.num_aggregates);
  std::vector<std::uint8_t> phase1(g.num_vertices, 0);
  for (index_t k = 0; k < agg.phase1_roots; ++k) phase1[agg.roots[k]] = 1;
  const bool roots_valid = verify::is_maximal_distance2(g, phase1);

  json run = graph_fields(prob.name, g);
  run["kernel"] = "coarsen";
  run["algorithm"] = o.algorithm;
  run["scheme"] = std::string(to_string(cfg.priority_scheme));
  run["num_aggregates"] = agg.num_aggregates;
  run["phase1_roots"] = agg.phase1_roots;
  run["min_aggregate_size"] = sizes.empty() ? 0 : *std::min_element(sizes.begin(), sizes.end());
  run["mean_aggregate_size"] =
      sizes.empty() ? 0.0 : static_cast<double>(g.num_vertices) / static_cast<double>(sizes.size());
  run["max_aggregate_size"] = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
  run["unassigned"] = unassigned_count;
  run["connected"] = connected;
  run["roots_valid"] = roots_valid;
  run["wall_time_ms"] = ms;
  res.report["runs"].push_back(run);

  if (labels_out) write_labels_csv(*labels_out, agg);
  if (!o.labels_path.empty()) {
    std::ofstream f(o.labels_path);
    if (!f) throw invalid_input("cannot write '" + o.labels_path + "'");
    write_labels_csv(f, agg);
  }
  if (unassigned_count != 0 || !connected || !roots_valid) {
    res.exit_code = exit_soft_failure;
    res.error = "coarsening failed structural checks";
  }
  return res;
}

struct GsBenchOptions {
  std::string input;
  std::string scheme = "cluster";  // point | cluster
  std::string algorithm = "agg";   // clustering used by the cluster scheme
  std::string solver = "gmres";    // cg | gmres
  std::string rhs = "random";      // random: b = A*x, x uniform in [-1,1]; ones: b = 1
  double tol = -1.0;               // <0: 1e-8 for gmres, 1e-12 for cg
  std::size_t restart = 50;
  std::size_t sweeps = 1;
  std::size_t max_iter = 800;
};

inline Vector make_rhs(const SparseMatrix& a, const std::string& kind, std::uint64_t seed) {
  Vector b(a.num_rows, 1.0);
  if (kind == "ones") return b;
  if (kind != "random") throw invalid_input("unknown rhs '" + kind + "'");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector x(a.num_rows);
  for (auto& v : x) v = unif(rng);
  spmv(a, x, b);
  return b;
}

inline CommandResult cmd_gs_bench(const GsBenchOptions& o, const CommonOptions& common) {
  CommandResult res;
  res.report = report_header("gs-bench", common);
  if (o.scheme != "point" && o.scheme != "cluster") throw invalid_input("unknown scheme '" + o.scheme + "'");
  if (o.solver != "cg" && o.solver != "gmres") throw invalid_input("unknown solver '" + o.solver + "'");
  if (o.algorithm != "basic" && o.algorithm != "agg") throw invalid_input("unknown algorithm '" + o.algorithm + "'");
  if (o.sweeps == 0) throw invalid_input("--sweeps must be >= 1");
  const double tol = o.tol > 0 ? o.tol : (o.solver == "cg" ? 1e-12 : 1e-8);
  const Problem prob = load_problem(o.input);
  const SparseMatrix& a = prob.matrix;
  const Vector b = make_rhs(a, o.rhs, common.seed);
  Mis2Config cfg;
  cfg.seed = common.seed;

  const ClusterScheme scheme = o.scheme == "point"
                                   ? ClusterScheme::Point
                                   : (o.algorithm == "basic" ? ClusterScheme::BasicCoarsen : ClusterScheme::Mis2Agg);
  auto t0 = std::chrono::steady_clock::now();
  const ClusterGSPrecond p = cluster_gs_setup(a, scheme, cfg);
  const double setup_ms = elapsed_ms(t0);
  const SgsPreconditioner m{&p, &a, o.sweeps};

  t0 = std::chrono::steady_clock::now();
  auto [x, rep] = o.solver == "cg" ? pcg(a, b, m, tol, o.max_iter) : gmres(a, b, m, tol, o.restart, o.max_iter);
  const double solve_ms = elapsed_ms(t0);

  json run = graph_fields(prob.name, pattern_symmetrize(a, true));
  run["kernel"] = "gs-bench";
  run["scheme"] = o.scheme;
  run["clustering"] = std::string(to_string(scheme));
  run["solver"] = o.solver;
  run["rhs"] = o.rhs;
  run["tol"] = tol;
  run["restart"] = o.restart;
  run["sweeps"] = o.sweeps;
  run["num_clusters"] = p.num_clusters();
  run["num_colors"] = p.coarse_coloring.num_colors;
  run["iterations"] = rep.iterations;
  run["converged"] = rep.converged;
  run["status"] = std::string(to_string(rep.status));
  const double frr = rep.final_relative_residual;
  run["final_relative_residual"] = std::isfinite(frr) ? frr : -1.0;
  run["setup_time_ms"] = setup_ms;
  run["apply_time_ms"] = solve_ms;
  res.report["runs"].push_back(run);
  if (!rep.converged) {
    res.exit_code = exit_soft_failure;
    res.error = "solver did not converge (" + std::string(to_string(rep.status)) + ")";
  }
  return res;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

struct HashStudyOptions {
  std::vector<std::string> inputs;
};

inline CommandResult cmd_hash_study(const HashStudyOptions& o, const CommonOptions& common) {
  if (o.inputs.empty()) throw invalid_input("hash-study needs at least one input");
  CommandResult res;
  std::ostringstream csv;
  csv << "graph,num_vertices,num_edges,seed,hash_constants,fixed,xor,xorstar,error\n";
  bool any_failed = false;
  for (const auto& input : o.inputs) {
    std::string name = input;
    try {
      const Problem prob = load_problem(input);
      name = prob.name;
      const Graph g = pattern_symmetrize(prob.matrix, true);
      csv << csv_field(name) << ',' << g.num_vertices << ',' << g.num_entries() / 2 << ',' << common.seed << ','
          << hash_constants_string();
      for (auto s : {PriorityScheme::Fixed, PriorityScheme::XorHash, PriorityScheme::XorStarHash}) {
        Mis2Config cfg;
        cfg.priority_scheme = s;
        cfg.seed = common.seed;
        csv << ',' << mis2(g, cfg).iterations;
      }
      csv << ",\n";
    } catch (const std::exception& e) {
      any_failed = true;
      std::string msg = e.what();
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      csv << csv_field(name) << ",,," << common.seed << ',' << hash_constants_string() << ",,,," << csv_field(msg) << '\n';
    }
  }
  res.csv = csv.str();
  if (any_failed) {
    res.exit_code = exit_soft_failure;
    res.error = "one or more inputs failed";
  }
  return res;
}

} // namespace d2mis::cli

#endif
