//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_VERIFY_HPP
#define D2MIS_VERIFY_HPP

// Brute-force reference checks. Single-threaded and intentionally plain.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <stdexcept>
#include <vector>

#include "d2mis/config.hpp"
#include "d2mis/graph.hpp"

namespace d2mis::verify {

using VertexSet = std::vector<std::uint8_t>;

namespace detail {

inline void check_size(const Graph& g, const VertexSet& s) {
  if (s.size() != g.num_vertices) throw invalid_input("vertex set size does not match graph");
}

// True if some member other than u lies within distance 2 of u.
inline bool member_within_two(const Graph& g, const VertexSet& s, index_t u) {
  for (index_t w : g.neighbors(u)) {
    if (s[w]) return true;
    for (index_t x : g.neighbors(w))
      if (x != u && s[x]) return true;
  }
  return false;
}

} // namespace detail

inline bool is_distance2_independent(const Graph& g, const VertexSet& s) {
  detail::check_size(g, s);
  for (index_t u = 0; u < g.num_vertices; ++u)
    if (s[u] && detail::member_within_two(g, s, u)) return false;
  return true;
}

inline bool is_maximal_distance2(const Graph& g, const VertexSet& s) {
  if (!is_distance2_independent(g, s)) return false;
  for (index_t v = 0; v < g.num_vertices; ++v)
    if (!s[v] && !detail::member_within_two(g, s, v)) return false;
  return true;
}

inline bool is_valid_mis2(const Graph& g, const VertexSet& s) { return is_maximal_distance2(g, s); }

/// Pattern of (G + I)^2 without its diagonal: u~v iff dist(u,v) in {1,2}.
inline Graph square_graph(const Graph& g, std::size_t max_entries = std::size_t{1} << 28) {
  Graph sq;
  sq.num_vertices = g.num_vertices;
  sq.row_offsets.assign(static_cast<std::size_t>(g.num_vertices) + 1, 0);
  std::vector<index_t> row;
  std::vector<index_t> mark(g.num_vertices, static_cast<index_t>(-1));
  for (index_t u = 0; u < g.num_vertices; ++u) {
    row.clear();
    mark[u] = u;
    for (index_t w : g.neighbors(u)) {
      if (mark[w] != u) {
        mark[w] = u;
        row.push_back(w);
      }
      for (index_t x : g.neighbors(w)) {
        if (mark[x] != u) {
          mark[x] = u;
          row.push_back(x);
        }
      }
    }
    std::sort(row.begin(), row.end());
    if (sq.col_indices.size() + row.size() > max_entries)
      throw std::length_error("square_graph: result exceeds " + std::to_string(max_entries) + " entries");
    sq.col_indices.insert(sq.col_indices.end(), row.begin(), row.end());
    sq.row_offsets[u + 1] = static_cast<index_t>(sq.col_indices.size());
  }
  return sq;
}

/// Distance-1 maximal independent set check.
inline bool is_maximal_independent(const Graph& g, const VertexSet& s) {
  detail::check_size(g, s);
  for (index_t v = 0; v < g.num_vertices; ++v) {
    bool member_neighbor = false;
    for (index_t w : g.neighbors(v)) member_neighbor |= s[w] != 0;
    if (s[v] && member_neighbor) return false;
    if (!s[v] && !member_neighbor) return false;
  }
  return true;
}

/// MIS-1 of the squared graph; must agree with is_maximal_distance2.
inline bool verify_via_squared(const Graph& g, const VertexSet& s) {
  return is_maximal_independent(square_graph(g), s);
}

/// Ascending-ID greedy scan. Always a valid MIS-2.
inline VertexSet greedy_sequential_mis2(const Graph& g) {
  VertexSet s(g.num_vertices, 0);
  for (index_t v = 0; v < g.num_vertices; ++v)
    if (!detail::member_within_two(g, s, v)) s[v] = 1;
  return s;
}

/// Hop distances from src, capped: vertices farther than max_depth get -1.
inline std::vector<int> bfs_depths(const Graph& g, index_t src, int max_depth) {
  std::vector<int> depth(g.num_vertices, -1);
  std::deque<index_t> q{src};
  depth[src] = 0;
  while (!q.empty()) {
    const index_t u = q.front();
    q.pop_front();
    if (depth[u] == max_depth) continue;
    for (index_t w : g.neighbors(u)) {
      if (depth[w] < 0) {
        depth[w] = depth[u] + 1;
        q.push_back(w);
      }
    }
  }
  return depth;
}

/// Every label in [0, num_aggregates).
inline bool labels_complete(std::span<const index_t> label, index_t num_aggregates) {
  return std::all_of(label.begin(), label.end(), [&](index_t a) { return a < num_aggregates; });
}

/// Each aggregate induces a connected subgraph.
inline bool aggregates_connected(const Graph& g, std::span<const index_t> label, index_t num_aggregates) {
  if (!labels_complete(label, num_aggregates)) return false;
  std::vector<index_t> first(num_aggregates, static_cast<index_t>(-1));
  std::vector<std::size_t> size(num_aggregates, 0);
  for (index_t v = 0; v < g.num_vertices; ++v) {
    if (first[label[v]] == static_cast<index_t>(-1)) first[label[v]] = v;
    ++size[label[v]];
  }
  // Visit aggregates through a shared mark array to stay O(V + E).
  std::vector<std::uint8_t> seen(g.num_vertices, 0);
  for (index_t a = 0; a < num_aggregates; ++a) {
    if (size[a] == 0) return false;
    std::size_t reached = 0;
    std::deque<index_t> q{first[a]};
    seen[first[a]] = 1;
    while (!q.empty()) {
      const index_t u = q.front();
      q.pop_front();
      ++reached;
      for (index_t w : g.neighbors(u)) {
        if (!seen[w] && label[w] == a) {
          seen[w] = 1;
          q.push_back(w);
        }
      }
    }
    if (reached != size[a]) return false;
  }
  return true;
}

/// Largest hop distance from an aggregate's root to one of its members,
/// measured inside the aggregate. Returns -1 if some member is unreachable.
inline int max_root_distance(const Graph& g, std::span<const index_t> label, std::span<const index_t> roots) {
  std::vector<int> dist(g.num_vertices, -1);
  for (index_t r : roots) {
    const index_t a = label[r];
    std::deque<index_t> q{r};
    dist[r] = 0;
    while (!q.empty()) {
      const index_t u = q.front();
      q.pop_front();
      for (index_t w : g.neighbors(u)) {
        if (dist[w] < 0 && label[w] == a) {
          dist[w] = dist[u] + 1;
          q.push_back(w);
        }
      }
    }
  }
  int worst = 0;
  for (int d : dist) {
    if (d < 0) return -1;
    worst = std::max(worst, d);
  }
  return worst;
}

} // namespace d2mis::verify

#endif
