#include "ddvv/identities.hpp"

#include <algorithm>
#include <cmath>

namespace ddvv {

namespace {

double relative(double residual, double scale) { return scale > 0.0 ? residual / scale : residual; }

double vec_norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

}  // namespace

double polarization_residual_unchecked(const Matrix& a1, const Matrix& a2, const Matrix& a3,
                                       const Matrix& a4) {
  const double sum = frob_inner(commutator(a1, a2), commutator(a3, a4)) +
                     frob_inner(commutator(a1, a4), commutator(a3, a2)) +
                     frob_inner(commutator(a1, a3), commutator(a2, a4));
  return relative(std::abs(sum), frob_norm(a1) * frob_norm(a2) * frob_norm(a3) * frob_norm(a4));
}

double sym_skew_polarization_residual(const Matrix& a1, const Matrix& a2, const Matrix& a3,
                                      const Matrix& a4) {
  if (!satisfies_kind(a1, MatKind::symmetric) || !satisfies_kind(a2, MatKind::symmetric)) {
    throw PreconditionError("sym_skew_polarization_residual: a1, a2 must be symmetric");
  }
  if (!satisfies_kind(a3, MatKind::skew) || !satisfies_kind(a4, MatKind::skew)) {
    throw PreconditionError("sym_skew_polarization_residual: a3, a4 must be skew");
  }
  return polarization_residual_unchecked(a1, a2, a3, a4);
}

SplitCheck commutator_split_check(const Matrix& x, const Matrix& y) {
  if (!x.is_square() || x.rows() != y.rows() || x.cols() != y.cols()) {
    throw ShapeError("commutator_split_check: x and y must be square of equal size");
  }
  const auto [a1, a3] = split_sym_skew(x);
  const auto [a2, a4] = split_sym_skew(y);
  const Matrix c12 = commutator(a1, a2);
  const Matrix c14 = commutator(a1, a4);
  const Matrix c13 = commutator(a1, a3);
  const Matrix c23 = commutator(a2, a3);
  const Matrix c24 = commutator(a2, a4);
  const Matrix c34 = commutator(a3, a4);
  const Matrix mixed = c14 + commutator(a3, a2);
  const Matrix pure = c12 + c34;
  const double full = frob_norm_sq(commutator(x, y));
  const double scale = frob_norm_sq(x) * frob_norm_sq(y);

  SplitCheck out;
  out.residual = relative(std::abs(full - frob_norm_sq(mixed) - frob_norm_sq(pure)), scale);
  out.mixed_part_symmetric = satisfies_kind(mixed, MatKind::symmetric);
  out.pure_part_skew = satisfies_kind(pure, MatKind::skew);
  const double pair_sum = frob_norm_sq(c12) + frob_norm_sq(c13) + frob_norm_sq(c14) +
                          frob_norm_sq(c23) + frob_norm_sq(c24) + frob_norm_sq(c34);
  out.cauchy_slack = relative(pair_sum - full, scale);
  return out;
}

double commutator_split_residual(const Matrix& x, const Matrix& y) {
  return commutator_split_check(x, y).residual;
}

Matrix hollow_symmetric(const Vec3& abc) {
  const auto [a, b, c] = abc;
  return Matrix::from_rows({{0.0, c, b}, {c, 0.0, a}, {b, a, 0.0}});
}

Vec3 hollow_bracket_vector(const Vec3& abc, const Vec3& xyz) {
  const Matrix k = commutator(hollow_symmetric(abc), hollow_symmetric(xyz));
  return {k(2, 1), k(0, 2), k(1, 0)};
}

Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

double cross_product_residual(const Vec3& abc, const Vec3& xyz) {
  const Vec3 got = hollow_bracket_vector(abc, xyz);
  const Vec3 want = cross(abc, xyz);
  double worst = 0.0;
  for (std::size_t k = 0; k < 3; ++k) worst = std::max(worst, std::abs(got[k] - want[k]));
  return relative(worst, vec_norm(abc) * vec_norm(xyz));
}

EtaLemmaSides eta_lemma_check(std::span<const double> eta, std::size_t i, std::size_t j,
                              std::size_t k, std::size_t l, double x, double y) {
  const std::size_t n = eta.size();
  if (!(x >= y && y >= 0.0)) throw PreconditionError("eta_lemma_check: need x >= y >= 0");
  if (i >= n || j >= n || k >= n || l >= n) {
    throw PreconditionError("eta_lemma_check: index out of range");
  }
  if (i == j || k == l) throw PreconditionError("eta_lemma_check: need i != j and k != l");
  if ((i == k && j == l) || (i == l && j == k)) {
    throw PreconditionError("eta_lemma_check: need {i,j} != {k,l}");
  }
  double norm_sq = 0.0;
  for (double v : eta) norm_sq += v * v;
  if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-12) {
    throw PreconditionError("eta_lemma_check: eta must be a unit vector");
  }
  const double dij = eta[i] - eta[j];
  const double dkl = eta[k] - eta[l];
  return {dij * dij * x + dkl * dkl * y, 2.0 * x + y};
}

EigenGap eigengap_bound_check(const Matrix& a) {
  const SymEigen e = eig_sym(a);
  EigenGap g;
  double sq = 0.0;
  for (double v : e.values) sq += v * v;
  g.bound = 2.0 * sq;
  if (!e.values.empty()) {
    const double spread = e.values.front() - e.values.back();
    g.max_gap_sq = spread * spread;
  }
  return g;
}

}  // namespace ddvv
