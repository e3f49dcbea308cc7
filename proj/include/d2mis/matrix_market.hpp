//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_MATRIX_MARKET_HPP
#define D2MIS_MATRIX_MARKET_HPP

// Matrix Market coordinate reader/writer. Supports real and pattern fields
// with general or symmetric storage; array format is rejected.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "d2mis/config.hpp"
#include "d2mis/graph.hpp"

namespace d2mis {

class parse_error : public invalid_input {
 public:
  parse_error(std::size_t line, const std::string& msg)
      : invalid_input("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct mm_entry {
  std::uint64_t row;
  std::uint64_t col;
  double value;
  std::size_t line;
};

} // namespace detail

inline SparseMatrix parse_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw parse_error(1, "empty input");
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") throw parse_error(lineno, "missing %%MatrixMarket banner");
  object = detail::lower(object);
  format = detail::lower(format);
  field = detail::lower(field);
  symmetry = detail::lower(symmetry);
  if (object != "matrix") throw parse_error(lineno, "unsupported object '" + object + "'");
  if (format == "array") throw parse_error(lineno, "array format is not supported");
  if (format != "coordinate") throw parse_error(lineno, "unsupported format '" + format + "'");
  const bool pattern = field == "pattern";
  if (!pattern && field != "real") throw parse_error(lineno, "unsupported field '" + field + "'");
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") throw parse_error(lineno, "unsupported symmetry '" + symmetry + "'");

  // Skip comments up to the size line.
  std::uint64_t nrows = 0, ncols = 0, nentries = 0;
  for (;;) {
    if (!std::getline(in, line)) throw parse_error(lineno + 1, "missing size line");
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream sz(line);
    std::string extra;
    if (!(sz >> nrows >> ncols >> nentries) || (sz >> extra)) throw parse_error(lineno, "malformed size line");
    break;
  }
  if (nrows > std::numeric_limits<index_t>::max() - 1 || ncols > std::numeric_limits<index_t>::max() - 1)
    throw parse_error(lineno, "dimensions exceed the index type");

  std::vector<detail::mm_entry> entries;
  entries.reserve(symmetric ? 2 * nentries : nentries);
  std::uint64_t seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (seen == nentries) throw parse_error(lineno, "more entries than declared");
    std::istringstream ls(line);
    std::int64_t i = 0, j = 0;
    double v = 1.0;
    if (!(ls >> i >> j)) throw parse_error(lineno, "malformed entry");
    if (!pattern && !(ls >> v)) throw parse_error(lineno, "missing value");
    std::string extra;
    if (ls >> extra) throw parse_error(lineno, "trailing data in entry");
    if (i < 1 || j < 1 || static_cast<std::uint64_t>(i) > nrows || static_cast<std::uint64_t>(j) > ncols)
      throw parse_error(lineno, "index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    const auto r = static_cast<std::uint64_t>(i - 1);
    const auto c = static_cast<std::uint64_t>(j - 1);
    entries.push_back({r, c, v, lineno});
    if (symmetric && r != c) entries.push_back({c, r, v, lineno});
    ++seen;
  }
  if (seen != nentries)
    throw parse_error(lineno, "expected " + std::to_string(nentries) + " entries, found " + std::to_string(seen));

  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });

  SparseMatrix m;
  m.num_rows = static_cast<index_t>(nrows);
  m.num_cols = static_cast<index_t>(ncols);
  m.row_offsets.assign(nrows + 1, 0);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col) {
      if (entries[k - 1].value != e.value)
        throw parse_error(e.line, "duplicate entry (" + std::to_string(e.row + 1) + "," + std::to_string(e.col + 1) +
                                      ") with conflicting value");
      continue;
    }
    ++m.row_offsets[e.row + 1];
    m.col_indices.push_back(static_cast<index_t>(e.col));
    m.values.push_back(e.value);
  }
  for (std::size_t r = 0; r < nrows; ++r) m.row_offsets[r + 1] += m.row_offsets[r];
  return m;
}

inline SparseMatrix parse_matrix_market(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_matrix_market(in);
}

inline SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open '" + path + "'");
  return parse_matrix_market(in);
}

/// Writes general real coordinate format with round-trip precision.
inline void write_matrix_market(std::ostream& out, const SparseMatrix& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.num_rows << ' ' << m.num_cols << ' ' << m.nnz() << '\n';
  char buf[64];
  for (index_t i = 0; i < m.num_rows; ++i) {
    for (index_t k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k) {
      auto res = std::to_chars(buf, buf + sizeof buf, m.values[k]);
      out << (i + 1) << ' ' << (m.col_indices[k] + 1) << ' ' << std::string_view(buf, res.ptr - buf) << '\n';
    }
  }
}

} // namespace d2mis

#endif
