// Independent reference computations for the tests. Deliberately naive:
// explicit index loops, no calls into the library's arithmetic.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "ddvv/matcore.hpp"

namespace oracle {

using ddvv::Matrix;

inline double entry_sq_sum(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return s;
}

inline Matrix naive_product(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline Matrix naive_commutator(const Matrix& a, const Matrix& b) {
  Matrix ab = naive_product(a, b), ba = naive_product(b, a);
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = ab(i, j) - ba(i, j);
  return c;
}

inline double comm_sq(const Matrix& a, const Matrix& b) { return entry_sq_sum(naive_commutator(a, b)); }

/// Determinant by LU with partial pivoting.
inline double lu_det(Matrix a) {
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

/// Central-difference derivative of f at x along direction d.
inline double directional_fd(const std::function<double(double)>& f, double h = 1e-6) {
  return (f(h) - f(-h)) / (2.0 * h);
}

}  // namespace oracle

#include "ddvv/matcore.hpp"

namespace oracle {

/// Orthonormal basis of the kind subspace (optionally traceless) of n×n matrices.
inline std::vector<Matrix> kind_basis(std::size_t n, ddvv::MatKind kind, bool traceless = false) {
  std::vector<Matrix> out;
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix e(n, n);
      if (kind == ddvv::MatKind::general) {
        if (traceless && i == j) continue;
        e(i, j) = 1;
      } else if (i < j) {
        e(i, j) = h;
        e(j, i) = kind == ddvv::MatKind::symmetric ? h : -h;
      } else if (i == j && kind == ddvv::MatKind::symmetric && !traceless) {
        e(i, i) = 1;
      } else {
        continue;
      }
      out.push_back(std::move(e));
    }
  if (traceless && kind != ddvv::MatKind::skew) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      Matrix e(n, n);
      e(i, i) = h;
      e(i + 1, i + 1) = -h;
      out.push_back(std::move(e));
    }
  }
  return out;
}

/// Relative distance between the analytic directional derivatives <g_r, E>
/// and central differences of f along each basis direction E of each slot.
inline double fd_gradient_error(const std::function<double(const ddvv::MatTuple&)>& f, const ddvv::MatTuple& x,
                                const ddvv::MatTuple& g, bool traceless = false, double h = 1e-5) {
  double diff = 0, norm = 0;
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (const Matrix& e : kind_basis(x.n(), x.kind(r), traceless)) {
      ddvv::MatTuple plus = x, minus = x;
      plus.set(r, x.mat(r) + e * h);
      minus.set(r, x.mat(r) - e * h);
      const double fd = (f(plus) - f(minus)) / (2 * h);
      double an = 0;
      for (std::size_t i = 0; i < x.n(); ++i)
        for (std::size_t j = 0; j < x.n(); ++j) an += g.mat(r)(i, j) * e(i, j);
      diff += (fd - an) * (fd - an);
      norm += an * an;
    }
  }
  return std::sqrt(diff) / std::max(std::sqrt(norm), 1e-300);
}

}  // namespace oracle
