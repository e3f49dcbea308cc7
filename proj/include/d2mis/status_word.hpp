//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_STATUS_WORD_HPP
#define D2MIS_STATUS_WORD_HPP

#include <bit>
#include <cassert>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>

#include "d2mis/config.hpp"

namespace d2mis {

/// Packs a vertex's MIS-2 state into one unsigned word.
///
/// IN is 0 and OUT is all ones. An undecided vertex stores
/// `(priority << id_bits) | (id + 1)` where id_bits = ceil(log2(|V| + 2)).
/// Since 2^id_bits - 1 > |V|, the low field is never all ones, so every
/// undecided word lies strictly between IN and OUT. Comparing packed words
/// compares (priority, id) lexicographically.
template <std::unsigned_integral Word>
class status_codec {
 public:
  static constexpr Word in = 0;
  static constexpr Word out = std::numeric_limits<Word>::max();
  static constexpr int word_bits = std::numeric_limits<Word>::digits;
  // At least this many priority bits must remain after the ID field.
  static constexpr int min_priority_bits = 8;

  explicit status_codec(std::uint64_t num_vertices) : num_vertices_(num_vertices) {
    id_bits_ = id_bits_for(num_vertices);
    if (id_bits_ > word_bits - min_priority_bits)
      throw invalid_input("status word too narrow: " + std::to_string(num_vertices) + " vertices need " +
                          std::to_string(id_bits_) + " ID bits of " + std::to_string(word_bits));
    priority_bits_ = word_bits - id_bits_;
  }

  static int id_bits_for(std::uint64_t num_vertices) {
    // Smallest b with 2^b >= |V| + 2.
    return std::bit_width(num_vertices + 1);
  }

  int id_bits() const { return id_bits_; }
  int priority_bits() const { return priority_bits_; }
  std::uint64_t num_vertices() const { return num_vertices_; }
  Word max_priority() const { return static_cast<Word>(out >> id_bits_); }

  /// Keeps the high-order bits of a 64-bit hash as the priority.
  Word truncate(std::uint64_t hash) const { return static_cast<Word>(hash >> (64 - priority_bits_)); }

  Word pack(Word priority, Word id) const {
    assert(id < num_vertices_);
    assert(priority <= max_priority());
    return static_cast<Word>((priority << id_bits_) | (id + 1));
  }

  Word priority_of(Word packed) const { return static_cast<Word>(packed >> id_bits_); }
  Word id_of(Word packed) const { return static_cast<Word>((packed & id_mask()) - 1); }

  static bool decided(Word w) { return w == in || w == out; }

 private:
  Word id_mask() const { return static_cast<Word>((Word{1} << id_bits_) - 1); }

  std::uint64_t num_vertices_;
  int id_bits_ = 0;
  int priority_bits_ = 0;
};

} // namespace d2mis

#endif
