// Evaluators for the commutator-norm inequalities and the comass form.
#pragma once

#include <array>
#include <optional>

#include "ddvv/gap.hpp"
#include "ddvv/matcore.hpp"

namespace ddvv {

/// sum_{r<s} |[A_r, A_s]|^2
double pairwise_commutator_sum(const MatTuple& t);

/// (sum |A_r|^2)^2 >= 2 sum_{r<s} |[A_r,A_s]|^2 for symmetric and/or skew
/// entries. Throws PreconditionError if any entry is of general kind.
GapReport ddvv_gap(const MatTuple& t);

/// 2 |x|^2 |y|^2 >= |[x,y]|^2 for arbitrary square x, y.
GapReport bw_gap(const Matrix& x, const Matrix& y);

/// (3/2)(sum |A_i|^2)^2 - sum |A_i|^4 >= 2 sum_{i<j} |[A_i,A_j]|^2, symmetric
/// entries only.
GapReport lili_gap(const MatTuple& t);

/// Checks the quadratic-in-t^2 rewrite used in the induction step of the
/// lili bound. Requires |A_1| >= |A_i| for all i and A_1 != 0. Returns
/// |lili gap - rewritten form| / (sum |A_i|^2)^2.
double lili_induction_residual(const MatTuple& t);

/// Four pairwise Frobenius-orthonormal matrices of a common shape.
class Frame4 {
 public:
  /// Throws PreconditionError unless <A_i, A_j> = delta_ij within 1e-12.
  explicit Frame4(std::array<Matrix, 4> mats);

  std::size_t rows() const { return mats_[0].rows(); }
  std::size_t cols() const { return mats_[0].cols(); }
  const std::array<Matrix, 4>& mats() const { return mats_; }
  const Matrix& operator[](std::size_t k) const { return mats_[k]; }

 private:
  std::array<Matrix, 4> mats_;
};

/// {AB} = A B^T - B A^T
Matrix outer_bracket(const Matrix& a, const Matrix& b);

/// phi(A1 ^ A2 ^ A3 ^ A4) = -1/2 tr({A1A2}{A3A4} + {A3A1}{A2A4} + {A2A3}{A1A4}).
/// Evaluated on raw matrices; no orthonormality check.
double comass_form(const Matrix& a1, const Matrix& a2, const Matrix& a3, const Matrix& a4);

double comass_value(const Frame4& f);

/// Reference comass of the first Pontryagin form for the cited (n, ambient m)
/// cases: sqrt(3/2) at (3,6), 4/3 at (3,7), 3/2 at (4,8).
std::optional<double> reference_comass(std::size_t n, std::size_t ambient_m);

/// Reduction quantities of the 3×3 argument and both readings of its
/// side condition. Experimental: the inequality is measured, not asserted.
struct Psq3Report {
  std::array<double, 3> r_sq{};  // b23^2+c23^2, b13^2+c13^2, b12^2+c12^2
  double mu_sq = 0.0;            // sum of squared diagonal entries of b and c
  double m0 = 0.0;
  bool condition_holds = false;      // 2 sqrt(m0) - mu_sq >= 0
  bool alt_condition_holds = false;  // sqrt(m0) - mu_sq >= 0
  double lhs = 0.0;                  // (|b|^2+|c|^2)^2 - 2|[b,c]|^2
  double rhs = 0.0;                  // 2 (sqrt(m0) - mu_sq)^2 if condition_holds
  double alt_rhs = 0.0;              // same, gated on alt_condition_holds
  double scale = 0.0;                // (|b|^2+|c|^2)^2

  double gap() const { return lhs - rhs; }
  double alt_gap() const { return lhs - alt_rhs; }
};

Psq3Report psq_gap(const Matrix& b, const Matrix& c);

struct CommutatorStats {
  double mean_ratio = 0.0;
  double stddev = 0.0;
  std::size_t samples = 0;
};

/// Mean and sample standard deviation of |[X,Y]|^2 / (|X|^2 |Y|^2) over
/// Gaussian pairs.
CommutatorStats commutator_statistics(std::size_t n, std::size_t samples, Rng& rng);

}  // namespace ddvv
