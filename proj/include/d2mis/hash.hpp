//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_HASH_HPP
#define D2MIS_HASH_HPP

#include <concepts>
#include <cstdint>
#include <limits>

namespace d2mis {

inline constexpr int xorshift_shift_a = 13;
inline constexpr int xorshift_shift_b = 7;
inline constexpr int xorshift_shift_c = 17;
inline constexpr std::uint64_t xorshift_star_multiplier = 0x2545F4914F6CDD1DULL;

/// Three-step xorshift on an arbitrary unsigned width. Every step is
/// invertible, so the map is a bijection; shifts at or beyond the word
/// width leave the value unchanged.
template <std::unsigned_integral Word>
constexpr Word xorshift(Word x, int a, int b, int c) {
  constexpr int width = std::numeric_limits<Word>::digits;
  if (a < width) x = static_cast<Word>(x ^ static_cast<Word>(x << a));
  if (b < width) x = static_cast<Word>(x ^ static_cast<Word>(x >> b));
  if (c < width) x = static_cast<Word>(x ^ static_cast<Word>(x << c));
  return x;
}

/// Marsaglia xorshift on 64 bits. 0 is its only fixed point.
constexpr std::uint64_t xorshift64(std::uint64_t x) {
  return xorshift<std::uint64_t>(x, xorshift_shift_a, xorshift_shift_b, xorshift_shift_c);
}

/// xorshift followed by an odd multiplicative (mod 2^64) step.
constexpr std::uint64_t xorshift64star(std::uint64_t x) { return xorshift64(x) * xorshift_star_multiplier; }

} // namespace d2mis

#endif
