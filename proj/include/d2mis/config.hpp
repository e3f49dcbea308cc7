//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_CONFIG_HPP
#define D2MIS_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace d2mis {

// Vertex IDs and CSR offsets share one unsigned width. The MIS-2 status
// word packs (priority, id) into this same width.
#if defined(D2MIS_INDEX_64) && D2MIS_INDEX_64
using index_t = std::uint64_t;
#else
using index_t = std::uint32_t;
#endif

inline constexpr const char* version_string = "1.0.0";

// Raised for malformed inputs and violated preconditions.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

} // namespace d2mis

#endif
