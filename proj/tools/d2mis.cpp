//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using d2mis::cli::CommandResult;

int emit(const CommandResult& res, const std::string& output, bool as_csv) {
  const std::string body = as_csv ? res.csv : res.report.dump(2) + "\n";
  if (output.empty() || output == "-") {
    std::cout << body;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write '" << output << "'\n";
      return d2mis::cli::exit_hard_error;
    }
    f << body;
  }
  if (!res.error.empty()) std::cerr << "d2mis: " << res.error << "\n";
  return res.exit_code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance-2 maximal independent sets, MIS-2 coarsening and cluster Gauss-Seidel"};
  app.require_subcommand(1);
  app.set_version_flag("--version", d2mis::version_string);

  d2mis::cli::CommonOptions common;
  std::string output;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Priority hash seed");
    sub->add_option("--threads", common.threads, "Worker threads (default: hardware parallelism)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--output,-o", output, "Report path (default: stdout)");
  };

  d2mis::cli::Mis2Options mis_opt;
  std::string scheme_name = "xorstar";
  auto* mis = app.add_subcommand("mis2", "Compute and verify an MIS-2");
  mis->add_option("input", mis_opt.input, ".mtx path or laplace3d:NX,NY,NZ / grid2d:NX,NY")->required();
  mis->add_option("--scheme", scheme_name, "Priority scheme")
      ->check(CLI::IsMember({"fixed", "xor", "xorstar"}));
  add_common(mis);

  d2mis::cli::CoarsenOptions co_opt;
  auto* co = app.add_subcommand("coarsen", "MIS-2 based coarsening");
  co->add_option("input", co_opt.input, ".mtx path or generator spec")->required();
  co->add_option("--algorithm", co_opt.algorithm, "basic | agg")->check(CLI::IsMember({"basic", "agg"}));
  co->add_option("--labels", co_opt.labels_path, "Write vertex,aggregate CSV here");
  add_common(co);

  d2mis::cli::GsBenchOptions gs_opt;
  auto* gs = app.add_subcommand("gs-bench", "Point vs cluster multicolor SGS as a Krylov preconditioner");
  gs->add_option("input", gs_opt.input, ".mtx path or generator spec")->required();
  gs->add_option("--scheme", gs_opt.scheme, "point | cluster")->check(CLI::IsMember({"point", "cluster"}));
  gs->add_option("--algorithm", gs_opt.algorithm, "Clustering for the cluster scheme: basic | agg")
      ->check(CLI::IsMember({"basic", "agg"}));
  gs->add_option("--solver", gs_opt.solver, "cg | gmres")->check(CLI::IsMember({"cg", "gmres"}));
  gs->add_option("--tol", gs_opt.tol, "Relative residual tolerance (default 1e-8 gmres, 1e-12 cg)");
  gs->add_option("--restart", gs_opt.restart, "GMRES restart length")->check(CLI::PositiveNumber);
  gs->add_option("--sweeps", gs_opt.sweeps, "Symmetric sweeps per preconditioner application")
      ->check(CLI::PositiveNumber);
  gs->add_option("--max-iter", gs_opt.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  gs->add_option("--rhs", gs_opt.rhs, "random (b = A x, x uniform in [-1,1]) | ones")
      ->check(CLI::IsMember({"random", "ones"}));
  add_common(gs);

  d2mis::cli::HashStudyOptions hs_opt;
  auto* hs = app.add_subcommand("hash-study", "MIS-2 iteration counts under all three priority schemes (CSV)");
  hs->add_option("inputs", hs_opt.inputs, "One or more .mtx paths or generator specs")->required();
  add_common(hs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : d2mis::cli::exit_hard_error;
  }

  if (common.threads > 0) d2mis::par::set_num_threads(common.threads);

  try {
    if (*mis) {
      mis_opt.scheme = d2mis::parse_priority_scheme(scheme_name);
      return emit(d2mis::cli::cmd_mis2(mis_opt, common), output, false);
    }
    if (*co) return emit(d2mis::cli::cmd_coarsen(co_opt, common), output, false);
    if (*gs) return emit(d2mis::cli::cmd_gs_bench(gs_opt, common), output, false);
    if (*hs) return emit(d2mis::cli::cmd_hash_study(hs_opt, common), output, true);
  } catch (const std::exception& e) {
    std::cerr << "d2mis: error: " << e.what() << "\n";
    return d2mis::cli::exit_hard_error;
  }
  return d2mis::cli::exit_hard_error;
}
