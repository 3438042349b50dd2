// Residual-level checks of the closed-form identities used in the proofs.
// Every residual is divided by the product of the inputs' Frobenius norms
// raised to the identity's degree in each input.
#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "ddvv/matcore.hpp"

namespace ddvv {

using Vec3 = std::array<double, 3>;

/// |<[a1,a2],[a3,a4]> + <[a1,a4],[a3,a2]> + <[a1,a3],[a2,a4]>| / (|a1||a2||a3||a4|).
/// a1, a2 must be exactly symmetric and a3, a4 exactly skew.
double sym_skew_polarization_residual(const Matrix& a1, const Matrix& a2, const Matrix& a3,
                                      const Matrix& a4);

/// Same expression without kind checks. Used to report what happens outside
/// the sym/skew hypothesis; carries no contract.
double polarization_residual_unchecked(const Matrix& a1, const Matrix& a2, const Matrix& a3,
                                       const Matrix& a4);

struct SplitCheck {
  /// | |[x,y]|^2 - |[a1,a4]+[a3,a2]|^2 - |[a1,a2]+[a3,a4]|^2 | / (|x|^2 |y|^2)
  double residual = 0.0;
  /// Exact structure of the two pieces.
  bool mixed_part_symmetric = false;
  bool pure_part_skew = false;
  /// (sum_{i<j} |[a_i,a_j]|^2 - |[x,y]|^2) / (|x|^2 |y|^2); nonnegative up to rounding.
  double cauchy_slack = 0.0;
};

/// Splits x = a1 + a3, y = a2 + a4 into symmetric/skew parts and checks the
/// orthogonal decomposition of [x,y].
SplitCheck commutator_split_check(const Matrix& x, const Matrix& y);

double commutator_split_residual(const Matrix& x, const Matrix& y);

/// Hollow symmetric 3×3 matrix [[0,c,b],[c,0,a],[b,a,0]] from (a,b,c).
Matrix hollow_symmetric(const Vec3& abc);

/// Reads (p,q,r) off the skew bracket [B, X] of two hollow matrices, taken
/// at (2,1), (0,2), (1,0), which equals (a,b,c) × (x,y,z).
Vec3 hollow_bracket_vector(const Vec3& abc, const Vec3& xyz);

Vec3 cross(const Vec3& u, const Vec3& v);

/// |hollow_bracket_vector - abc × xyz|_inf / (|abc| |xyz|).
double cross_product_residual(const Vec3& abc, const Vec3& xyz);

struct EtaLemmaSides {
  double lhs = 0.0;  // (eta_i - eta_j)^2 x + (eta_k - eta_l)^2 y
  double rhs = 0.0;  // 2x + y
};

/// Indices are zero-based. Requires x >= y >= 0, |eta| = 1 within 1e-12,
/// i != j, k != l and {i,j} != {k,l}.
EtaLemmaSides eta_lemma_check(std::span<const double> eta, std::size_t i, std::size_t j,
                              std::size_t k, std::size_t l, double x, double y);

struct EigenGap {
  double max_gap_sq = 0.0;  // max_{i,j} (lambda_i - lambda_j)^2
  double bound = 0.0;       // 2 sum lambda_i^2
};

EigenGap eigengap_bound_check(const Matrix& a);

}  // namespace ddvv
