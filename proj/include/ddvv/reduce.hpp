// The O(n) x O(m) action on matrix tuples, canonical forms, span reduction
// and the symmetric/skew embedding of a commutator pair.
#pragma once

#include "ddvv/matcore.hpp"

namespace ddvv {

/// (p, q) with p ∈ O(n) acting by conjugation and q ∈ O(m) mixing the tuple.
class GroupElement {
 public:
  /// Throws PreconditionError unless p p^T = I and q q^T = I within 1e-12.
  GroupElement(Matrix p, Matrix q);

  static GroupElement identity(std::size_t n, std::size_t m);

  /// Random p and a random q that is block-diagonal over the kind classes of
  /// `shape` (so it never mixes symmetric with skew entries).
  static GroupElement random_for(const MatTuple& shape, Rng& rng);

  const Matrix& p() const { return p_; }
  const Matrix& q() const { return q_; }

 private:
  Matrix p_;
  Matrix q_;
};

/// A_r -> sum_j q_rj p A_j p^T. Kinds are preserved; q may only couple
/// entries of equal kind.
MatTuple g_action(const GroupElement& g, const MatTuple& t);

struct Canonical {
  MatTuple tuple;
  GroupElement g;
};

/// Rotates a symmetric tuple so its Frobenius Gram matrix is diagonal with
/// descending entries, then conjugates so A_1 is diagonal with descending
/// diagonal. Signs: A_1 satisfies lambda_max >= |lambda_min|; every later
/// entry has a positive first significant diagonal coefficient; the
/// eigenvector signs make the first significant above-diagonal entry in each
/// column of A_2, A_3, ... positive. Orbit mates with simple spectra map to
/// the same output.
Canonical canonicalize(const MatTuple& t);

struct SpanReduction {
  MatTuple tuple;
  std::size_t effective_m = 0;
};

/// Gram rotation of a symmetric tuple; directions with Gram eigenvalue
/// <= 1e-12 · sum |A_r|^2 are zeroed exactly. The tuple keeps m entries, the
/// retained ones first.
SpanReduction span_reduce(const MatTuple& t);

struct BwEmbedding {
  /// (t·sym(x), sym(y)/t, t·skew(x), skew(y)/t)
  MatTuple tuple;
  double t_opt = 1.0;  // t^2 = |y| / |x|
};

BwEmbedding bw_embed(const Matrix& x, const Matrix& y);

}  // namespace ddvv
