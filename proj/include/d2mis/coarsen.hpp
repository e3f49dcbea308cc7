//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_COARSEN_HPP
#define D2MIS_COARSEN_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "d2mis/config.hpp"
#include "d2mis/graph.hpp"
#include "d2mis/mis2.hpp"
#include "d2mis/parallel.hpp"

namespace d2mis {

inline constexpr index_t unassigned = std::numeric_limits<index_t>::max();

/// Per-vertex aggregate assignment. Aggregates seeded in phase 1 come
/// first (ascending root ID), followed by phase-2 aggregates.
struct AggregateLabels {
  std::vector<index_t> label;
  index_t num_aggregates = 0;
  std::vector<index_t> roots;
  index_t phase1_roots = 0;

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> s(num_aggregates, 0);
    for (index_t a : label)
      if (a != unassigned) ++s[a];
    return s;
  }
  std::size_t count_unassigned() const { return static_cast<std::size_t>(std::count(label.begin(), label.end(), unassigned)); }

  friend bool operator==(const AggregateLabels&, const AggregateLabels&) = default;
};

struct InducedSubgraph {
  Graph graph;
  std::vector<index_t> old_to_new;  // unassigned for masked-out vertices
  std::vector<index_t> new_to_old;
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const std::uint8_t> mask) {
  if (mask.size() != g.num_vertices) throw invalid_input("induced_subgraph: mask size mismatch");
  InducedSubgraph s;
  s.old_to_new.assign(g.num_vertices, unassigned);
  for (index_t v = 0; v < g.num_vertices; ++v) {
    if (mask[v]) {
      s.old_to_new[v] = static_cast<index_t>(s.new_to_old.size());
      s.new_to_old.push_back(v);
    }
  }
  const auto n = static_cast<index_t>(s.new_to_old.size());
  s.graph.num_vertices = n;
  s.graph.row_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (index_t i = 0; i < n; ++i) {
    // Old IDs are ascending, so the relabelled rows stay sorted.
    for (index_t w : g.neighbors(s.new_to_old[i]))
      if (mask[w]) s.graph.col_indices.push_back(s.old_to_new[w]);
    s.graph.row_offsets[i + 1] = static_cast<index_t>(s.graph.col_indices.size());
  }
  return s;
}

namespace detail {

// Roots claim themselves and their neighbors. Roots of an MIS-2 are at
// distance >= 3, so no vertex can be claimed twice.
inline AggregateLabels seed_from_roots(const Graph& g, std::span<const std::uint8_t> root_set) {
  const index_t n = g.num_vertices;
  if (root_set.size() != n) throw invalid_input("root set size mismatch");
  std::vector<std::uint8_t> claims(n, 0);
  par::parallel_for(n, [&](std::size_t v) {
    unsigned c = 0;
    for_each_closed_neighbor(g, static_cast<index_t>(v), [&](index_t w) { c += root_set[w] ? 1u : 0u; });
    claims[v] = static_cast<std::uint8_t>(std::min(c, 2u));
  });
  for (index_t v = 0; v < n; ++v)
    if (claims[v] > 1)
      throw std::logic_error("vertex " + std::to_string(v) + " is adjacent to two roots; roots are not an MIS-2");

  AggregateLabels agg;
  std::vector<index_t> all(n);
  for (index_t v = 0; v < n; ++v) all[v] = v;
  agg.roots = par::compact(std::span<const index_t>(all), [&](index_t v) { return root_set[v] != 0; });
  agg.num_aggregates = static_cast<index_t>(agg.roots.size());
  agg.phase1_roots = agg.num_aggregates;
  agg.label.assign(n, unassigned);
  par::parallel_for(agg.roots.size(), [&](std::size_t a) {
    const index_t r = agg.roots[a];
    for_each_closed_neighbor(g, r, [&](index_t w) { agg.label[w] = static_cast<index_t>(a); });
  });
  return agg;
}

inline void require_complete(const AggregateLabels& agg, const char* who) {
  for (std::size_t v = 0; v < agg.label.size(); ++v)
    if (agg.label[v] == unassigned)
      throw std::logic_error(std::string(who) + ": vertex " + std::to_string(v) + " left unassigned");
}

} // namespace detail

/// Basic coarsening from a given MIS-2: roots plus neighbors, then each
/// leftover joins the aggregate of its smallest-ID aggregated neighbor.
inline AggregateLabels coarsen_basic_from_roots(const Graph& g, std::span<const std::uint8_t> roots) {
  AggregateLabels agg = detail::seed_from_roots(g, roots);
  const std::vector<index_t> tent = agg.label;
  par::parallel_for(g.num_vertices, [&](std::size_t v) {
    if (tent[v] != unassigned) return;
    for (index_t w : g.neighbors(static_cast<index_t>(v))) {
      if (tent[w] != unassigned) {
        agg.label[v] = tent[w];
        break;
      }
    }
  });
  detail::require_complete(agg, "coarsen_basic");
  return agg;
}

inline AggregateLabels coarsen_basic(const Graph& g, const Mis2Config& cfg = {}) {
  return coarsen_basic_from_roots(g, mis2(g, cfg).in_set);
}

/// Three-phase MIS-2 aggregation. `mis_fn(Graph)` supplies the
/// independent sets (as per-vertex flags) for phases 1 and 2.
template <class MisFn>
AggregateLabels aggregate_mis2_with(const Graph& g, MisFn&& mis_fn) {
  const index_t n = g.num_vertices;

  // Phase 1
  AggregateLabels agg = detail::seed_from_roots(g, mis_fn(g));

  // Phase 2: roots of an MIS-2 on the unaggregated subgraph, kept only if
  // they would gather at least two unaggregated neighbors.
  std::vector<std::uint8_t> free_mask(n);
  for (index_t v = 0; v < n; ++v) free_mask[v] = agg.label[v] == unassigned;
  const InducedSubgraph sub = induced_subgraph(g, free_mask);
  if (sub.graph.num_vertices > 0) {
    const std::vector<std::uint8_t> sub_roots = mis_fn(sub.graph);
    std::vector<index_t> candidates;
    for (index_t i = 0; i < sub.graph.num_vertices; ++i)
      if (sub_roots[i]) candidates.push_back(sub.new_to_old[i]);
    const std::vector<index_t> accepted = par::compact(std::span<const index_t>(candidates), [&](index_t r) {
      std::size_t free_neighbors = 0;
      for (index_t w : g.neighbors(r)) free_neighbors += free_mask[w];
      return free_neighbors >= 2;
    });
    const index_t base = agg.num_aggregates;
    par::parallel_for(accepted.size(), [&](std::size_t k) {
      const index_t r = accepted[k];
      const auto a = static_cast<index_t>(base + k);
      agg.label[r] = a;
      for (index_t w : g.neighbors(r))
        if (free_mask[w]) agg.label[w] = a;
    });
    agg.roots.insert(agg.roots.end(), accepted.begin(), accepted.end());
    agg.num_aggregates = static_cast<index_t>(agg.roots.size());
  }

  // Phase 3: join the adjacent tentative aggregate with the strongest
  // coupling; ties go to the smaller aggregate, then the lower ID.
  const std::vector<index_t> tent = agg.label;
  const std::vector<std::size_t> tent_size = agg.sizes();
  par::parallel_for(n, [&](std::size_t v) {
    if (tent[v] != unassigned) return;
    std::vector<std::pair<index_t, std::size_t>> coupling;
    for (index_t w : g.neighbors(static_cast<index_t>(v))) {
      const index_t a = tent[w];
      if (a == unassigned) continue;
      auto it = std::find_if(coupling.begin(), coupling.end(), [&](const auto& p) { return p.first == a; });
      if (it == coupling.end()) coupling.emplace_back(a, 1);
      else ++it->second;
    }
    index_t best = unassigned;
    std::size_t best_coupling = 0;
    for (auto [a, c] : coupling) {
      const bool better = best == unassigned || c > best_coupling ||
                          (c == best_coupling && (tent_size[a] < tent_size[best] ||
                                                  (tent_size[a] == tent_size[best] && a < best)));
      if (better) {
        best = a;
        best_coupling = c;
      }
    }
    agg.label[v] = best;
  });
  detail::require_complete(agg, "aggregate_mis2");
  return agg;
}

inline AggregateLabels aggregate_mis2(const Graph& g, const Mis2Config& cfg = {}) {
  return aggregate_mis2_with(g, [&](const Graph& h) { return mis2(h, cfg).in_set; });
}

/// Quotient graph: one vertex per aggregate, an edge wherever two
/// different aggregates touch.
inline Graph build_coarse_graph(const Graph& g, const AggregateLabels& agg) {
  if (agg.label.size() != g.num_vertices) throw invalid_input("build_coarse_graph: label size mismatch");
  detail::require_complete(agg, "build_coarse_graph");
  const index_t nc = agg.num_aggregates;
  std::vector<std::vector<index_t>> adj(nc);
  for (index_t u = 0; u < g.num_vertices; ++u) {
    const index_t a = agg.label[u];
    for (index_t v : g.neighbors(u))
      if (agg.label[v] != a) adj[a].push_back(agg.label[v]);
  }
  Graph c;
  c.num_vertices = nc;
  c.row_offsets.assign(static_cast<std::size_t>(nc) + 1, 0);
  for (index_t a = 0; a < nc; ++a) {
    auto& r = adj[a];
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    c.col_indices.insert(c.col_indices.end(), r.begin(), r.end());
    c.row_offsets[a + 1] = static_cast<index_t>(c.col_indices.size());
  }
  return c;
}

/// Two-column CSV: vertex,aggregate.
inline void write_labels_csv(std::ostream& out, const AggregateLabels& agg) {
  out << "vertex,aggregate\n";
  for (std::size_t v = 0; v < agg.label.size(); ++v) out << v << ',' << agg.label[v] << '\n';
}

} // namespace d2mis

#endif
