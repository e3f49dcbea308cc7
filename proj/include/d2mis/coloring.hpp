//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_COLORING_HPP
#define D2MIS_COLORING_HPP

#include <cstddef>
#include <vector>

#include "d2mis/config.hpp"
#include "d2mis/graph.hpp"

namespace d2mis {

struct Coloring {
  std::vector<index_t> color;
  index_t num_colors = 0;
  std::vector<std::vector<index_t>> color_sets;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// Sequential first-fit coloring in ascending vertex order.
inline Coloring greedy_color(const Graph& g) {
  constexpr index_t none = static_cast<index_t>(-1);
  Coloring c;
  c.color.assign(g.num_vertices, none);
  // forbidden[k] == v marks color k as taken by a neighbor of v.
  std::vector<index_t> forbidden;
  for (index_t v = 0; v < g.num_vertices; ++v) {
    for (index_t w : g.neighbors(v)) {
      const index_t k = c.color[w];
      if (k != none) forbidden[k] = v;
    }
    index_t k = 0;
    while (k < forbidden.size() && forbidden[k] == v) ++k;
    if (k == forbidden.size()) forbidden.push_back(none);
    c.color[v] = k;
  }
  c.num_colors = static_cast<index_t>(forbidden.size());
  c.color_sets.assign(c.num_colors, {});
  for (index_t v = 0; v < g.num_vertices; ++v) c.color_sets[c.color[v]].push_back(v);
  return c;
}

inline bool is_proper_coloring(const Graph& g, const Coloring& c) {
  if (c.color.size() != g.num_vertices) return false;
  for (index_t v = 0; v < g.num_vertices; ++v) {
    if (c.color[v] >= c.num_colors) return false;
    for (index_t w : g.neighbors(v))
      if (c.color[w] == c.color[v]) return false;
  }
  return true;
}

} // namespace d2mis

#endif
