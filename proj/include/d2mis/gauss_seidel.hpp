//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_GAUSS_SEIDEL_HPP
#define D2MIS_GAUSS_SEIDEL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "d2mis/coarsen.hpp"
#include "d2mis/coloring.hpp"
#include "d2mis/config.hpp"
#include "d2mis/graph.hpp"
#include "d2mis/mis2.hpp"
#include "d2mis/parallel.hpp"

namespace d2mis {

enum class ClusterScheme { Point, BasicCoarsen, Mis2Agg };

inline std::string_view to_string(ClusterScheme s) {
  switch (s) {
    case ClusterScheme::Point: return "point";
    case ClusterScheme::BasicCoarsen: return "basic";
    case ClusterScheme::Mis2Agg: return "agg";
  }
  return "?";
}

enum class SweepDirection { Forward, Backward };

/// Reusable setup for cluster multicolor Gauss-Seidel: aggregates of the
/// matrix graph, a proper coloring of the aggregate graph, and the rows of
/// each aggregate. Valid for any matrix with the same sparsity pattern.
struct ClusterGSPrecond {
  ClusterScheme scheme = ClusterScheme::Point;
  AggregateLabels labels;
  Coloring coarse_coloring;
  std::vector<std::vector<index_t>> cluster_rows;
  std::vector<double> inv_diag;
  std::vector<double> diag;

  std::size_t num_clusters() const { return cluster_rows.size(); }
};

inline ClusterGSPrecond cluster_gs_setup(const SparseMatrix& a, ClusterScheme scheme, const Mis2Config& cfg = {}) {
  validate(a);
  if (a.num_rows != a.num_cols) throw invalid_input("cluster_gs_setup: matrix is not square");
  const index_t n = a.num_rows;

  ClusterGSPrecond p;
  p.scheme = scheme;
  p.diag.assign(n, 0.0);
  p.inv_diag.assign(n, 0.0);
  for (index_t i = 0; i < n; ++i) {
    auto cols = a.row_cols(i);
    auto vals = a.row_values(i);
    bool found = false;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] == i) {
        p.diag[i] = vals[k];
        found = true;
      }
    }
    if (!found || p.diag[i] == 0.0 || !std::isfinite(1.0 / p.diag[i]))
      throw invalid_input("cluster_gs_setup: zero or missing diagonal in row " + std::to_string(i));
    p.inv_diag[i] = 1.0 / p.diag[i];
  }

  const Graph g = pattern_symmetrize(a, true);
  Graph coarse;
  switch (scheme) {
    case ClusterScheme::Point: {
      p.labels.label.resize(n);
      p.labels.roots.resize(n);
      for (index_t i = 0; i < n; ++i) p.labels.label[i] = p.labels.roots[i] = i;
      p.labels.num_aggregates = p.labels.phase1_roots = n;
      coarse = g;
      break;
    }
    case ClusterScheme::BasicCoarsen:
      p.labels = coarsen_basic(g, cfg);
      coarse = build_coarse_graph(g, p.labels);
      break;
    case ClusterScheme::Mis2Agg:
      p.labels = aggregate_mis2(g, cfg);
      coarse = build_coarse_graph(g, p.labels);
      break;
  }
  p.coarse_coloring = greedy_color(coarse);
  p.cluster_rows.assign(p.labels.num_aggregates, {});
  for (index_t i = 0; i < n; ++i) p.cluster_rows[p.labels.label[i]].push_back(i);

  // Same-color clusters must not touch, otherwise a color step would race.
  for (index_t i = 0; i < n; ++i) {
    const index_t ci = p.labels.label[i];
    for (index_t j : a.row_cols(i)) {
      const index_t cj = p.labels.label[j];
      if (ci != cj && p.coarse_coloring.color[ci] == p.coarse_coloring.color[cj])
        throw std::logic_error("cluster_gs_setup: rows " + std::to_string(i) + " and " + std::to_string(j) +
                               " share a color across clusters");
    }
  }
  return p;
}

namespace detail {

inline void gs_update_row(const SparseMatrix& a, const ClusterGSPrecond& p, std::span<double> x,
                          std::span<const double> b, index_t i) {
  double r = b[i];
  for (index_t k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) r -= a.values[k] * x[a.col_indices[k]];
  x[i] += r / p.diag[i];
}

} // namespace detail

/// One multicolor sweep. Forward visits colors and intra-cluster rows in
/// ascending order, Backward reverses both.
inline void gs_sweep(const ClusterGSPrecond& p, const SparseMatrix& a, std::span<double> x,
                     std::span<const double> b, SweepDirection dir) {
  if (x.size() != a.num_rows || b.size() != a.num_rows || p.diag.size() != a.num_rows)
    throw invalid_input("gs_sweep: dimension mismatch");
  const auto& sets = p.coarse_coloring.color_sets;
  const std::size_t ncolors = sets.size();
  for (std::size_t step = 0; step < ncolors; ++step) {
    const auto& clusters = sets[dir == SweepDirection::Forward ? step : ncolors - 1 - step];
    par::parallel_for(clusters.size(), [&](std::size_t k) {
      const auto& rows = p.cluster_rows[clusters[k]];
      if (dir == SweepDirection::Forward) {
        for (index_t i : rows) detail::gs_update_row(a, p, x, b, i);
      } else {
        for (auto it = rows.rbegin(); it != rows.rend(); ++it) detail::gs_update_row(a, p, x, b, *it);
      }
    });
  }
}

/// Symmetric Gauss-Seidel from x = 0: `sweeps` forward/backward pairs.
inline Vector sgs_apply(const ClusterGSPrecond& p, const SparseMatrix& a, std::span<const double> b,
                        std::size_t sweeps = 1) {
  if (sweeps == 0) throw invalid_input("sgs_apply: sweeps must be >= 1");
  Vector x(a.num_rows, 0.0);
  for (std::size_t s = 0; s < sweeps; ++s) {
    gs_sweep(p, a, x, b, SweepDirection::Forward);
    gs_sweep(p, a, x, b, SweepDirection::Backward);
  }
  return x;
}

/// Preconditioner adapter for the Krylov drivers.
struct SgsPreconditioner {
  const ClusterGSPrecond* setup;
  const SparseMatrix* matrix;
  std::size_t sweeps = 1;

  void apply(std::span<const double> r, std::span<double> z) const {
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t s = 0; s < sweeps; ++s) {
      gs_sweep(*setup, *matrix, z, r, SweepDirection::Forward);
      gs_sweep(*setup, *matrix, z, r, SweepDirection::Backward);
    }
  }
};

} // namespace d2mis

#endif
