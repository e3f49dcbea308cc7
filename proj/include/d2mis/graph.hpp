//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_GRAPH_HPP
#define D2MIS_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "d2mis/config.hpp"
#include "d2mis/parallel.hpp"

namespace d2mis {

using Vector = std::vector<double>;

/// Undirected graph in CSR form (pattern only).
///
/// Rows are sorted and duplicate-free, every column index is in range and
/// the adjacency is symmetric. Self-loops are never stored; algorithms that
/// need the closed neighborhood inject the vertex at access time.
struct Graph {
  index_t num_vertices = 0;
  std::vector<index_t> row_offsets{0};
  std::vector<index_t> col_indices;

  std::size_t num_entries() const { return col_indices.size(); }
  std::size_t degree(index_t v) const { return row_offsets[v + 1] - row_offsets[v]; }

  std::span<const index_t> neighbors(index_t v) const {
    return {col_indices.data() + row_offsets[v], degree(v)};
  }

  friend bool operator==(const Graph&, const Graph&) = default;
};

/// Square CSR matrix with real values. Rows sorted, no duplicate columns.
struct SparseMatrix {
  index_t num_rows = 0;
  index_t num_cols = 0;
  std::vector<index_t> row_offsets{0};
  std::vector<index_t> col_indices;
  std::vector<double> values;

  std::size_t nnz() const { return col_indices.size(); }

  std::span<const index_t> row_cols(index_t i) const {
    return {col_indices.data() + row_offsets[i], row_offsets[i + 1] - row_offsets[i]};
  }
  std::span<const double> row_values(index_t i) const {
    return {values.data() + row_offsets[i], row_offsets[i + 1] - row_offsets[i]};
  }

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;
};

namespace detail {

inline void check_csr(index_t nrows, index_t ncols, std::span<const index_t> offsets,
                      std::span<const index_t> cols, const char* what) {
  const std::string name(what);
  if (offsets.size() != static_cast<std::size_t>(nrows) + 1)
    throw invalid_input(name + ": row_offsets must have num_rows+1 entries");
  if (offsets.front() != 0) throw invalid_input(name + ": row_offsets[0] must be 0");
  for (std::size_t i = 0; i < nrows; ++i)
    if (offsets[i + 1] < offsets[i]) throw invalid_input(name + ": row_offsets must be nondecreasing");
  if (offsets.back() != cols.size()) throw invalid_input(name + ": row_offsets[n] must equal the entry count");
  for (std::size_t i = 0; i < nrows; ++i) {
    for (index_t k = offsets[i]; k < offsets[i + 1]; ++k) {
      if (cols[k] >= ncols)
        throw invalid_input(name + ": column index out of range in row " + std::to_string(i));
      if (k > offsets[i] && cols[k] <= cols[k - 1])
        throw invalid_input(name + ": row " + std::to_string(i) + " is not strictly increasing");
    }
  }
}

} // namespace detail

/// Throws invalid_input unless every Graph invariant holds, symmetry included.
inline void validate(const Graph& g) {
  detail::check_csr(g.num_vertices, g.num_vertices, g.row_offsets, g.col_indices, "graph");
  for (index_t u = 0; u < g.num_vertices; ++u) {
    for (index_t v : g.neighbors(u)) {
      if (v == u) throw invalid_input("graph: self-loop at vertex " + std::to_string(u));
      auto nb = g.neighbors(v);
      if (!std::binary_search(nb.begin(), nb.end(), u))
        throw invalid_input("graph: edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") has no reverse");
    }
  }
}

inline void validate(const SparseMatrix& m) {
  detail::check_csr(m.num_rows, m.num_cols, m.row_offsets, m.col_indices, "matrix");
  if (m.values.size() != m.col_indices.size()) throw invalid_input("matrix: values/col_indices size mismatch");
}

/// Builds a graph from an undirected edge list. Self-loops and repeated
/// edges are dropped; each edge is stored in both directions.
inline Graph graph_from_edges(index_t n, std::span<const std::pair<index_t, index_t>> edges) {
  std::vector<std::pair<index_t, index_t>> both;
  both.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw invalid_input("edge endpoint out of range");
    if (u == v) continue;
    both.emplace_back(u, v);
    both.emplace_back(v, u);
  }
  std::sort(both.begin(), both.end());
  both.erase(std::unique(both.begin(), both.end()), both.end());
  Graph g;
  g.num_vertices = n;
  g.row_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  g.col_indices.reserve(both.size());
  for (auto [u, v] : both) {
    ++g.row_offsets[u + 1];
    g.col_indices.push_back(v);
  }
  for (std::size_t i = 0; i < n; ++i) g.row_offsets[i + 1] += g.row_offsets[i];
  return g;
}

inline Graph graph_from_edges(index_t n, std::initializer_list<std::pair<index_t, index_t>> edges) {
  return graph_from_edges(n, std::span<const std::pair<index_t, index_t>>(edges.begin(), edges.size()));
}

/// Union of the matrix pattern and its transpose, as an undirected graph.
inline Graph pattern_symmetrize(const SparseMatrix& m, bool drop_diagonal = true) {
  validate(m);
  if (m.num_rows != m.num_cols) throw invalid_input("pattern_symmetrize: matrix is not square");
  const index_t n = m.num_rows;
  std::vector<std::vector<index_t>> rows(n);
  for (index_t i = 0; i < n; ++i) {
    for (index_t j : m.row_cols(i)) {
      if (i == j) {
        if (!drop_diagonal) rows[i].push_back(j);
        continue;
      }
      rows[i].push_back(j);
      rows[j].push_back(i);
    }
  }
  Graph g;
  g.num_vertices = n;
  g.row_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (index_t i = 0; i < n; ++i) {
    auto& r = rows[i];
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    g.row_offsets[i + 1] = g.row_offsets[i] + static_cast<index_t>(r.size());
  }
  g.col_indices.reserve(g.row_offsets[n]);
  for (auto& r : rows) g.col_indices.insert(g.col_indices.end(), r.begin(), r.end());
  return g;
}

/// {v} together with v's neighbors, ascending.
inline std::vector<index_t> closed_neighbors(const Graph& g, index_t v) {
  if (v >= g.num_vertices) throw invalid_input("closed_neighbors: vertex out of range");
  auto nb = g.neighbors(v);
  std::vector<index_t> out;
  out.reserve(nb.size() + 1);
  auto split = std::lower_bound(nb.begin(), nb.end(), v);
  out.insert(out.end(), nb.begin(), split);
  if (split == nb.end() || *split != v) out.push_back(v);
  out.insert(out.end(), split, nb.end());
  return out;
}

/// Visits every member of the closed neighborhood of v (v last). Hot-loop
/// form of closed_neighbors that avoids allocation.
template <class F>
inline void for_each_closed_neighbor(const Graph& g, index_t v, F&& f) {
  for (index_t k = g.row_offsets[v]; k < g.row_offsets[v + 1]; ++k) f(g.col_indices[k]);
  f(v);
}

/// y = A x, rows in parallel, each row accumulated in stored column order.
inline void spmv(const SparseMatrix& a, std::span<const double> x, std::span<double> y) {
  par::parallel_for(a.num_rows, [&](std::size_t i) {
    double s = 0.0;
    for (index_t k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) s += a.values[k] * x[a.col_indices[k]];
    y[i] = s;
  });
}

} // namespace d2mis

#endif
