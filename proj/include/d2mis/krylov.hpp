//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#ifndef D2MIS_KRYLOV_HPP
#define D2MIS_KRYLOV_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "d2mis/config.hpp"
#include "d2mis/graph.hpp"
#include "d2mis/parallel.hpp"

namespace d2mis {

template <class P>
concept Preconditioner = requires(const P& p, std::span<const double> in, std::span<double> out) {
  { p.apply(in, out) };
};

struct IdentityPreconditioner {
  void apply(std::span<const double> r, std::span<double> z) const { std::copy(r.begin(), r.end(), z.begin()); }
};

struct JacobiPreconditioner {
  std::span<const double> inv_diag;
  void apply(std::span<const double> r, std::span<double> z) const {
    par::parallel_for(r.size(), [&](std::size_t i) { z[i] = inv_diag[i] * r[i]; });
  }
};

enum class SolveStatus { Converged, MaxIterations, Breakdown, Stagnation };

inline std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max_iterations";
    case SolveStatus::Breakdown: return "breakdown";
    case SolveStatus::Stagnation: return "stagnation";
  }
  return "?";
}

struct SolveReport {
  std::size_t iterations = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::MaxIterations;
  double final_relative_residual = 0.0;
  // ||b - Ax|| / ||b|| per iteration, starting at x = 0.
  std::vector<double> residual_history;
};

namespace detail {

inline double norm2(std::span<const double> v) { return std::sqrt(par::dot(v, v)); }

inline double true_relative_residual(const SparseMatrix& a, std::span<const double> x, std::span<const double> b,
                                     double bnorm) {
  std::vector<double> ax(a.num_rows);
  spmv(a, x, ax);
  const double r = par::tree_sum(ax.size(), [&](std::size_t i) {
    const double d = b[i] - ax[i];
    return d * d;
  });
  return std::sqrt(r) / bnorm;
}

inline void check_system(const SparseMatrix& a, std::span<const double> b) {
  if (a.num_rows != a.num_cols) throw invalid_input("solver: matrix is not square");
  if (b.size() != a.num_rows) throw invalid_input("solver: right-hand side size mismatch");
}

} // namespace detail

/// Preconditioned conjugate gradient from x = 0.
template <Preconditioner P>
std::pair<Vector, SolveReport> pcg(const SparseMatrix& a, std::span<const double> b, const P& precond, double tol,
                                   std::size_t max_iter) {
  detail::check_system(a, b);
  const std::size_t n = a.num_rows;
  Vector x(n, 0.0), r(b.begin(), b.end()), z(n), p(n), ap(n);
  SolveReport rep;
  const double bnorm = detail::norm2(b);
  if (bnorm == 0.0) {
    rep.converged = true;
    rep.status = SolveStatus::Converged;
    rep.residual_history = {0.0};
    return {x, rep};
  }
  rep.residual_history.push_back(1.0);
  precond.apply(r, z);
  p = z;
  double rz = par::dot(r, z);
  double rel = 1.0;
  while (true) {
    if (rel <= tol) {
      rep.converged = true;
      rep.status = SolveStatus::Converged;
      break;
    }
    if (rep.iterations == max_iter) {
      rep.status = SolveStatus::MaxIterations;
      break;
    }
    if (!(rz > 0.0)) {
      rep.status = SolveStatus::Breakdown;
      break;
    }
    spmv(a, p, ap);
    const double pap = par::dot(p, ap);
    if (!(pap > 0.0)) {
      rep.status = SolveStatus::Breakdown;
      break;
    }
    const double alpha = rz / pap;
    par::parallel_for(n, [&](std::size_t i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    });
    ++rep.iterations;
    rel = detail::norm2(r) / bnorm;
    rep.residual_history.push_back(rel);
    precond.apply(r, z);
    const double rz_next = par::dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    par::parallel_for(n, [&](std::size_t i) { p[i] = z[i] + beta * p[i]; });
  }
  rep.final_relative_residual = rel;
  return {x, rep};
}

/// Right-preconditioned restarted GMRES from x = 0. The small
/// least-squares problem is reduced with Householder reflections applied
/// column by column to the Hessenberg matrix.
template <Preconditioner P>
std::pair<Vector, SolveReport> gmres(const SparseMatrix& a, std::span<const double> b, const P& precond, double tol,
                                     std::size_t restart, std::size_t max_iter) {
  detail::check_system(a, b);
  if (restart == 0) throw invalid_input("gmres: restart must be >= 1");
  const std::size_t n = a.num_rows;
  const std::size_t m = restart;
  Vector x(n, 0.0);
  SolveReport rep;
  const double bnorm = detail::norm2(b);
  if (bnorm == 0.0) {
    rep.converged = true;
    rep.status = SolveStatus::Converged;
    rep.residual_history = {0.0};
    return {x, rep};
  }

  std::vector<Vector> basis(m + 1, Vector(n));
  std::vector<Vector> zvec(m, Vector(n));
  // Column-major (m+1) x m Hessenberg, overwritten by R.
  std::vector<double> h((m + 1) * m, 0.0);
  auto H = [&](std::size_t i, std::size_t j) -> double& { return h[j * (m + 1) + i]; };
  // Each reflector acts on rows (j, j+1) with unit vector (v0, v1).
  std::vector<std::pair<double, double>> refl(m);
  std::vector<double> g(m + 1);
  Vector w(n), ax(n);

  double rel = 1.0;
  rep.residual_history.push_back(rel);
  while (true) {
    spmv(a, x, ax);
    par::parallel_for(n, [&](std::size_t i) { basis[0][i] = b[i] - ax[i]; });
    const double beta = detail::norm2(basis[0]);
    rel = beta / bnorm;
    rep.residual_history.back() = rel;
    if (rel <= tol) {
      rep.converged = true;
      rep.status = SolveStatus::Converged;
      break;
    }
    if (rep.iterations >= max_iter) {
      rep.status = SolveStatus::MaxIterations;
      break;
    }
    const double cycle_start = rel;
    par::parallel_for(n, [&](std::size_t i) { basis[0][i] /= beta; });
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    std::fill(h.begin(), h.end(), 0.0);

    std::size_t k = 0;  // columns completed in this cycle
    bool happy = false;
    while (k < m && rep.iterations < max_iter) {
      const std::size_t j = k;
      precond.apply(basis[j], zvec[j]);
      spmv(a, zvec[j], w);
      for (std::size_t i = 0; i <= j; ++i) {
        const double hij = par::dot(w, basis[i]);
        H(i, j) = hij;
        par::parallel_for(n, [&](std::size_t t) { w[t] -= hij * basis[i][t]; });
      }
      const double hnext = detail::norm2(w);
      H(j + 1, j) = hnext;
      if (hnext > 0.0) par::parallel_for(n, [&](std::size_t t) { basis[j + 1][t] = w[t] / hnext; });

      for (std::size_t i = 0; i < j; ++i) {
        const auto [v0, v1] = refl[i];
        const double d = 2.0 * (v0 * H(i, j) + v1 * H(i + 1, j));
        H(i, j) -= d * v0;
        H(i + 1, j) -= d * v1;
      }
      // Reflector mapping (H(j,j), H(j+1,j)) onto (alpha, 0).
      const double x0 = H(j, j), x1 = H(j + 1, j);
      const double len = std::hypot(x0, x1);
      if (len == 0.0) {
        refl[j] = {0.0, 0.0};
      } else {
        const double alpha = x0 >= 0.0 ? -len : len;
        double v0 = x0 - alpha, v1 = x1;
        const double vn = std::hypot(v0, v1);
        v0 /= vn;
        v1 /= vn;
        refl[j] = {v0, v1};
        H(j, j) = alpha;
        H(j + 1, j) = 0.0;
        const double d = 2.0 * (v0 * g[j] + v1 * g[j + 1]);
        g[j] -= d * v0;
        g[j + 1] -= d * v1;
      }
      ++k;
      ++rep.iterations;
      rel = std::abs(g[j + 1]) / bnorm;
      rep.residual_history.push_back(rel);
      if (rel <= tol) break;
      if (hnext == 0.0) {
        happy = true;
        break;
      }
    }

    // Back substitution on the k x k triangle; x += Z y.
    std::vector<double> y(k, 0.0);
    for (std::size_t ii = k; ii-- > 0;) {
      double s = g[ii];
      for (std::size_t jj = ii + 1; jj < k; ++jj) s -= H(ii, jj) * y[jj];
      y[ii] = H(ii, ii) != 0.0 ? s / H(ii, ii) : 0.0;
    }
    par::parallel_for(n, [&](std::size_t t) {
      double s = 0.0;
      for (std::size_t jj = 0; jj < k; ++jj) s += y[jj] * zvec[jj][t];
      x[t] += s;
    });

    rel = detail::true_relative_residual(a, x, b, bnorm);
    rep.residual_history.back() = rel;
    if (rel <= tol) {
      rep.converged = true;
      rep.status = SolveStatus::Converged;
      break;
    }
    if (happy || rel >= cycle_start) {
      rep.status = SolveStatus::Stagnation;
      break;
    }
    if (rep.iterations >= max_iter) {
      rep.status = SolveStatus::MaxIterations;
      break;
    }
  }
  rep.final_relative_residual = rel;
  return {x, rep};
}

} // namespace d2mis

#endif
