// Pointwise submanifold curvature from second-fundamental-form coefficients,
// and the bridge to the matrix formulation.
#pragma once

#include <vector>

#include "ddvv/gap.hpp"
#include "ddvv/matcore.hpp"

namespace ddvv {

/// Coefficients h[r][i][j] of a second fundamental form (r over the normal
/// frame, i, j over the tangent frame) in a space form of curvature c.
class FundForm {
 public:
  /// Each block must be n×n and exactly symmetric; n >= 2, at least one block.
  FundForm(std::vector<Matrix> blocks, double c);

  static FundForm from_tuple(const MatTuple& t, double c);

  std::size_t n() const { return n_; }
  std::size_t m() const { return blocks_.size(); }
  double c() const { return c_; }
  double h(std::size_t r, std::size_t i, std::size_t j) const { return blocks_[r](i, j); }
  const std::vector<Matrix>& blocks() const { return blocks_; }

 private:
  std::size_t n_ = 0;
  double c_ = 0.0;
  std::vector<Matrix> blocks_;
};

/// (A_1..A_m) with A_r[i][j] = h[r][i][j], all symmetric.
MatTuple to_tuple(const FundForm& f);

/// |H|^2 with H = trace(h)/n.
double mean_curvature_sq(const FundForm& f);

/// Gauss equation: rho = c + sum_r ((tr A_r)^2 - |A_r|^2) / (n(n-1)).
double scalar_curvature(const FundForm& f);

/// Normal scalar curvature, evaluated from the index formula.
double normal_scalar_curvature(const FundForm& f);

/// (1 + sum_r |A_r|^2)^2.
double curvature_scale(const FundForm& f);

/// lhs = |H|^2 + c, rhs = rho + rho_perp.
GapReport geometric_gap(const FundForm& f);

/// lhs = |H|^2 + c, rhs = rho.
GapReport chen_gap(const FundForm& f);

/// Coefficient form of the normal scalar curvature inequality:
/// lhs = sum (h_ii - h_jj)^2 + 2n sum h_ij^2 (i<j),
/// rhs = 2n sqrt(sum_{r<s} sum_{i<j} (sum_k h^r_ik h^s_jk - h^s_ik h^r_jk)^2).
GapReport eq1a_gap(const FundForm& f);

}  // namespace ddvv
