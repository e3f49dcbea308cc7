//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_GENERATORS_HPP
#define D2MIS_GENERATORS_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "d2mis/config.hpp"
#include "d2mis/graph.hpp"

namespace d2mis {

namespace detail {

// Structured stencil on an nx*ny*nz grid, lexicographic x-fastest numbering.
inline SparseMatrix stencil_matrix(std::uint64_t nx, std::uint64_t ny, std::uint64_t nz, double diag) {
  if (nx == 0 || ny == 0 || nz == 0) throw invalid_input("grid dimensions must be >= 1");
  const std::uint64_t limit = std::numeric_limits<index_t>::max() / 8;
  if (nx > limit || ny > limit / nx || nz > limit / (nx * ny))
    throw invalid_input("grid too large for the index type");
  const std::uint64_t n = nx * ny * nz;
  SparseMatrix m;
  m.num_rows = m.num_cols = static_cast<index_t>(n);
  m.row_offsets.assign(n + 1, 0);
  m.col_indices.reserve(7 * n);
  m.values.reserve(7 * n);
  auto push = [&](std::uint64_t col, double v) {
    m.col_indices.push_back(static_cast<index_t>(col));
    m.values.push_back(v);
  };
  for (std::uint64_t z = 0; z < nz; ++z) {
    for (std::uint64_t y = 0; y < ny; ++y) {
      for (std::uint64_t x = 0; x < nx; ++x) {
        const std::uint64_t row = x + nx * (y + ny * z);
        if (z > 0) push(row - nx * ny, -1.0);
        if (y > 0) push(row - nx, -1.0);
        if (x > 0) push(row - 1, -1.0);
        push(row, diag);
        if (x + 1 < nx) push(row + 1, -1.0);
        if (y + 1 < ny) push(row + nx, -1.0);
        if (z + 1 < nz) push(row + nx * ny, -1.0);
        m.row_offsets[row + 1] = static_cast<index_t>(m.col_indices.size());
      }
    }
  }
  return m;
}

} // namespace detail

/// 7-point Laplacian: 6 on the diagonal, -1 to each axis neighbor.
inline SparseMatrix gen_laplace3d(std::uint64_t nx, std::uint64_t ny, std::uint64_t nz) {
  return detail::stencil_matrix(nx, ny, nz, 6.0);
}

/// 5-point Laplacian: 4 on the diagonal, -1 to each axis neighbor.
inline SparseMatrix gen_grid2d(std::uint64_t nx, std::uint64_t ny) { return detail::stencil_matrix(nx, ny, 1, 4.0); }

/// Parses `laplace3d:NX,NY,NZ` or `grid2d:NX,NY`. Returns nullopt when the
/// string is not a generator spec at all; throws on a malformed one.
inline std::optional<SparseMatrix> generate_from_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const std::string_view kind = spec.substr(0, colon);
  if (kind != "laplace3d" && kind != "grid2d") return std::nullopt;
  std::vector<std::uint64_t> dims;
  std::string_view rest = spec.substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    const std::string token(rest.substr(0, comma));
    std::size_t used = 0;
    std::uint64_t d = 0;
    try {
      d = std::stoull(token, &used);
    } catch (const std::exception&) {
      throw invalid_input("bad generator dimension '" + token + "' in '" + std::string(spec) + "'");
    }
    if (used != token.size() || token.empty() || token[0] == '-')
      throw invalid_input("bad generator dimension '" + token + "' in '" + std::string(spec) + "'");
    dims.push_back(d);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (kind == "laplace3d") {
    if (dims.size() != 3) throw invalid_input("laplace3d expects NX,NY,NZ");
    return gen_laplace3d(dims[0], dims[1], dims[2]);
  }
  if (dims.size() != 2) throw invalid_input("grid2d expects NX,NY");
  return gen_grid2d(dims[0], dims[1]);
}

} // namespace d2mis

#endif
