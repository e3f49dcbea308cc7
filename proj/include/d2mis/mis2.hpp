//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_MIS2_HPP
#define D2MIS_MIS2_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "d2mis/config.hpp"
#include "d2mis/graph.hpp"
#include "d2mis/hash.hpp"
#include "d2mis/parallel.hpp"
#include "d2mis/status_word.hpp"

namespace d2mis {

enum class PriorityScheme { Fixed, XorHash, XorStarHash };

inline std::string_view to_string(PriorityScheme s) {
  switch (s) {
    case PriorityScheme::Fixed: return "fixed";
    case PriorityScheme::XorHash: return "xor";
    case PriorityScheme::XorStarHash: return "xorstar";
  }
  return "?";
}

inline PriorityScheme parse_priority_scheme(std::string_view s) {
  if (s == "fixed" || s == "Fixed") return PriorityScheme::Fixed;
  if (s == "xor" || s == "Xor") return PriorityScheme::XorHash;
  if (s == "xorstar" || s == "XorStar" || s == "xor*") return PriorityScheme::XorStarHash;
  throw invalid_input("unknown priority scheme '" + std::string(s) + "'");
}

struct Mis2Config {
  PriorityScheme priority_scheme = PriorityScheme::XorStarHash;
  std::uint64_t seed = 0;
  // Unset means 10*ceil(log2(|V|+2)) + 20.
  std::optional<std::size_t> max_iterations;

  std::size_t iteration_limit(std::uint64_t num_vertices) const {
    if (max_iterations) {
      if (*max_iterations == 0) throw invalid_input("max_iterations must be >= 1");
      return *max_iterations;
    }
    return 10 * static_cast<std::size_t>(std::bit_width(num_vertices + 1)) + 20;
  }
};

/// Pseudo-random 64-bit priority hash for vertex v in round iter.
///
/// Fixed ignores iter: f(seed ^ f(v+1)). The hashed schemes re-randomize
/// every round with f(f((iter+1) ^ seed) ^ f(v+1)); the +1 offsets keep
/// inputs away from the xorshift fixed point at zero.
inline std::uint64_t priority_hash(std::uint64_t iter, std::uint64_t v, const Mis2Config& cfg) {
  switch (cfg.priority_scheme) {
    case PriorityScheme::Fixed: return xorshift64star(cfg.seed ^ xorshift64star(v + 1));
    case PriorityScheme::XorHash: return xorshift64(xorshift64((iter + 1) ^ cfg.seed) ^ xorshift64(v + 1));
    case PriorityScheme::XorStarHash:
      return xorshift64star(xorshift64star((iter + 1) ^ cfg.seed) ^ xorshift64star(v + 1));
  }
  return 0;
}

/// Priority truncated to the bits left over after the ID field.
inline index_t priority(std::uint64_t iter, index_t v, const Mis2Config& cfg, const status_codec<index_t>& codec) {
  return codec.truncate(priority_hash(iter, v, cfg));
}

struct Mis2Result {
  std::vector<std::uint8_t> in_set;
  std::size_t iterations = 0;
  // |worklist_1| at the start of every round.
  std::vector<std::size_t> worklist_sizes;

  std::vector<index_t> members() const {
    std::vector<index_t> out;
    for (std::size_t v = 0; v < in_set.size(); ++v)
      if (in_set[v]) out.push_back(static_cast<index_t>(v));
    return out;
  }
  std::size_t size() const {
    std::size_t c = 0;
    for (auto b : in_set) c += b;
    return c;
  }
};

/// Thrown when the round limit is hit. Carries the state at that point.
class mis2_not_converged : public std::runtime_error {
 public:
  mis2_not_converged(std::size_t iterations, std::vector<index_t> row_status, std::vector<index_t> undecided)
      : std::runtime_error("mis2 did not converge after " + std::to_string(iterations) + " iterations (" +
                           std::to_string(undecided.size()) + " undecided)"),
        iterations(iterations),
        row_status(std::move(row_status)),
        undecided(std::move(undecided)) {}

  std::size_t iterations;
  std::vector<index_t> row_status;
  std::vector<index_t> undecided;
};

using Worklist = std::vector<index_t>;

/// Order-preserving filter of a worklist.
template <class Keep>
Worklist compact_worklist(std::span<const index_t> w, Keep&& keep) {
  return par::compact(w, keep);
}

/// Distance-2 maximal independent set with a caller-supplied priority
/// source. `prio(iter, v)` returns the priority of v in round iter; it is
/// masked to the available priority bits.
template <class PriorityFn>
Mis2Result mis2_with_priority(const Graph& g, const Mis2Config& cfg, PriorityFn&& prio) {
  using codec_t = status_codec<index_t>;
  const index_t n = g.num_vertices;
  const codec_t codec(n);
  const std::size_t limit = cfg.iteration_limit(n);
  const index_t pmask = codec.max_priority();

  // rowStatus is T_v, colStatus is M_v (minimum T over the closed neighborhood).
  std::vector<index_t> row_status(n, codec_t::out);
  std::vector<index_t> col_status(n, codec_t::out);
  Worklist rows(n), cols(n);
  for (index_t v = 0; v < n; ++v) rows[v] = cols[v] = v;

  Mis2Result result;
  std::size_t iter = 0;
  while (!rows.empty()) {
    if (iter == limit) throw mis2_not_converged(iter, std::move(row_status), std::move(rows));
    result.worklist_sizes.push_back(rows.size());

    par::parallel_for(rows.size(), [&](std::size_t k) {
      const index_t v = rows[k];
      row_status[v] = codec.pack(static_cast<index_t>(prio(iter, v)) & pmask, v);
    });

    par::parallel_for(cols.size(), [&](std::size_t k) {
      const index_t v = cols[k];
      index_t m = codec_t::out;
      for_each_closed_neighbor(g, v, [&](index_t w) { m = std::min(m, row_status[w]); });
      col_status[v] = (m == codec_t::in) ? codec_t::out : m;
    });

    par::parallel_for(rows.size(), [&](std::size_t k) {
      const index_t v = rows[k];
      const index_t s = row_status[v];
      bool nei_out = false;
      bool all_match = true;
      for_each_closed_neighbor(g, v, [&](index_t w) {
        const index_t c = col_status[w];
        if (c == codec_t::out) nei_out = true;
        else if (c != s) all_match = false;
      });
      if (nei_out) row_status[v] = codec_t::out;
      else if (all_match) row_status[v] = codec_t::in;
    });

    rows = compact_worklist(std::span<const index_t>(rows),
                            [&](index_t v) { return !codec_t::decided(row_status[v]); });
    cols = compact_worklist(std::span<const index_t>(cols), [&](index_t v) { return col_status[v] != codec_t::out; });
    ++iter;
  }

  result.iterations = iter;
  result.in_set.assign(n, 0);
  par::parallel_for(n, [&](std::size_t v) { result.in_set[v] = row_status[v] == codec_t::in; });
  return result;
}

/// Deterministic parallel MIS-2 with the configured priority scheme.
inline Mis2Result mis2(const Graph& g, const Mis2Config& cfg = {}) {
  const status_codec<index_t> codec(g.num_vertices);
  return mis2_with_priority(g, cfg, [&](std::size_t iter, index_t v) { return priority(iter, v, cfg, codec); });
}

} // namespace d2mis

#endif
