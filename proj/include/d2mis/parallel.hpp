//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_PARALLEL_HPP
#define D2MIS_PARALLEL_HPP

// Thin OpenMP layer. Every primitive here produces the same result for any
// thread count: loops write only to their own slot, compaction preserves
// input order, and floating-point reductions use a fixed-shape tree.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <omp.h>

namespace d2mis::par {

inline int max_threads() { return omp_get_max_threads(); }

inline void set_num_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

// Restores the previous thread count on scope exit.
class thread_scope {
 public:
  explicit thread_scope(int n) : saved_(omp_get_max_threads()) { set_num_threads(n); }
  ~thread_scope() { omp_set_num_threads(saved_); }
  thread_scope(const thread_scope&) = delete;
  thread_scope& operator=(const thread_scope&) = delete;

 private:
  int saved_;
};

template <class F>
void parallel_for(std::size_t n, F&& body) {
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 512)
  for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

inline constexpr std::size_t scan_block = 4096;

// Order-preserving filter implemented as count / exclusive scan / scatter
// over fixed-size blocks.
template <class T, class Keep>
std::vector<T> compact(std::span<const T> in, Keep&& keep) {
  const std::size_t n = in.size();
  const std::size_t nblocks = (n + scan_block - 1) / scan_block;
  std::vector<std::size_t> offsets(nblocks + 1, 0);
  std::vector<unsigned char> flags(n);
  parallel_for(nblocks, [&](std::size_t blk) {
    const std::size_t lo = blk * scan_block;
    const std::size_t hi = std::min(n, lo + scan_block);
    std::size_t c = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      flags[i] = keep(in[i]) ? 1 : 0;
      c += flags[i];
    }
    offsets[blk + 1] = c;
  });
  for (std::size_t blk = 0; blk < nblocks; ++blk) offsets[blk + 1] += offsets[blk];
  std::vector<T> out(offsets[nblocks]);
  parallel_for(nblocks, [&](std::size_t blk) {
    const std::size_t lo = blk * scan_block;
    const std::size_t hi = std::min(n, lo + scan_block);
    std::size_t pos = offsets[blk];
    for (std::size_t i = lo; i < hi; ++i)
      if (flags[i]) out[pos++] = in[i];
  });
  return out;
}

// Exclusive prefix sum of 0/1 flags; returns the total.
template <class Count>
Count exclusive_scan_flags(std::span<const unsigned char> flags, std::span<Count> out) {
  Count running = 0;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    out[i] = running;
    running += flags[i];
  }
  return running;
}

inline constexpr std::size_t reduce_chunk = 1024;

// Pairwise tree over per-chunk sequential partial sums. The tree shape
// depends only on the input length.
template <class Term>
double tree_sum(std::size_t n, Term&& term) {
  if (n == 0) return 0.0;
  const std::size_t nchunks = (n + reduce_chunk - 1) / reduce_chunk;
  std::vector<double> partial(nchunks);
  parallel_for(nchunks, [&](std::size_t c) {
    const std::size_t lo = c * reduce_chunk;
    const std::size_t hi = std::min(n, lo + reduce_chunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[c] = s;
  });
  for (std::size_t width = 1; width < nchunks; width *= 2)
    for (std::size_t i = 0; i + width < nchunks; i += 2 * width) partial[i] += partial[i + width];
  return partial[0];
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return tree_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

} // namespace d2mis::par

#endif
