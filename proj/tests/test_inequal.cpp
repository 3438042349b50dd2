#include <gtest/gtest.h>

#include <cmath>

#include "ddvv/inequal.hpp"
#include "ddvv/search.hpp"
#include "ddvv/suite.hpp"
#include "oracles.hpp"

using namespace ddvv;

namespace {

const Matrix kDiag = Matrix::diagonal({1.0, -1.0});
const Matrix kOff = Matrix::from_rows({{0, 1}, {1, 0}});

double naive_pair_sum(const MatTuple& t) {
  double s = 0;
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t q = r + 1; q < t.size(); ++q) s += oracle::comm_sq(t.mat(r), t.mat(q));
  return s;
}

}  // namespace

TEST(Ddvv, EqualityPair) {
  const GapReport g = ddvv_gap(MatTuple::symmetric({kDiag, kOff}));
  EXPECT_DOUBLE_EQ(g.lhs, 16.0);
  EXPECT_DOUBLE_EQ(g.rhs, 16.0);
  EXPECT_DOUBLE_EQ(g.gap, 0.0);
  EXPECT_DOUBLE_EQ(g.ratio, 1.0);
  EXPECT_TRUE(g.holds(0.0));
}

TEST(Ddvv, ZeroTupleAndSingleton) {
  const GapReport z = ddvv_gap(MatTuple::symmetric({Matrix(3, 3), Matrix(3, 3)}));
  EXPECT_EQ(z.gap, 0.0);
  EXPECT_EQ(z.ratio, 0.0);
  EXPECT_TRUE(z.holds(1e-10));
  const GapReport one = ddvv_gap(MatTuple::symmetric({kDiag}));
  EXPECT_EQ(one.rhs, 0.0);
}

TEST(Ddvv, MatchesNaiveSums) {
  Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 5, m = 2 + t % 4;
    const MatTuple x = sample_stress_tuple(n, m, rng);
    const double s = x.norm_sq_sum();
    const double pairs = naive_pair_sum(x);
    EXPECT_NEAR(pairwise_commutator_sum(x), pairs, 1e-12 * s * s);
    const GapReport g = ddvv_gap(x);
    EXPECT_NEAR(g.lhs, s * s, 1e-12 * s * s);
    EXPECT_NEAR(g.rhs, 2 * pairs, 1e-12 * s * s);
    EXPECT_TRUE(g.holds(1e-12));
  }
}

TEST(Ddvv, MixedKindsHoldAndGeneralRejected) {
  Rng rng(42);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + t % 4;
    MatTuple x({{MatKind::symmetric, random_matrix(n, MatKind::symmetric, rng)},
                {MatKind::skew, random_matrix(n, MatKind::skew, rng)},
                {MatKind::symmetric, random_matrix(n, MatKind::symmetric, rng)}});
    EXPECT_TRUE(ddvv_gap(x).holds(1e-12));
  }
  EXPECT_THROW(ddvv_gap(MatTuple::of_kind(MatKind::general, {kDiag, kOff})), PreconditionError);
}

TEST(Ddvv, HomogeneousOfDegreeZeroInRatio) {
  Rng rng(43);
  const MatTuple x = sample_stress_tuple(3, 3, rng);
  std::vector<Matrix> scaled;
  for (const auto& it : x) scaled.push_back(it.mat * 7.5);
  const GapReport a = ddvv_gap(x), b = ddvv_gap(MatTuple::symmetric(scaled));
  EXPECT_NEAR(a.ratio, b.ratio, 1e-13);
  EXPECT_NEAR(b.gap, a.gap * std::pow(7.5, 4), 1e-9 * b.scale);
}

TEST(Bw, EqualityCaseAndRandomPairs) {
  const Matrix e12 = Matrix::from_rows({{0, 1}, {0, 0}});
  const GapReport eq = bw_gap(e12, e12.transpose());
  EXPECT_DOUBLE_EQ(eq.lhs, 2.0);
  EXPECT_DOUBLE_EQ(eq.rhs, 2.0);
  EXPECT_DOUBLE_EQ(eq.scale, 1.0);
  Rng rng(44);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + t % 6;
    const Matrix x = random_matrix(n, n, rng), y = random_matrix(n, n, rng);
    const GapReport g = bw_gap(x, y);
    EXPECT_NEAR(g.rhs, oracle::comm_sq(x, y), 1e-12 * g.scale);
    EXPECT_TRUE(g.holds(1e-12));
  }
  EXPECT_THROW(bw_gap(Matrix(2, 2), Matrix(3, 3)), ShapeError);
}

TEST(Lili, HoldsAndRejectsSkew) {
  Rng rng(45);
  for (int t = 0; t < 300; ++t) {
    const MatTuple x = sample_stress_tuple(2 + t % 4, 2 + t % 3, rng);
    const GapReport g = lili_gap(x);
    double quartic = 0;
    for (const auto& it : x) quartic += std::pow(oracle::entry_sq_sum(it.mat), 2);
    const double s = x.norm_sq_sum();
    EXPECT_NEAR(g.lhs, 1.5 * s * s - quartic, 1e-12 * s * s);
    EXPECT_TRUE(g.holds(1e-12));
  }
  EXPECT_THROW(lili_gap(MatTuple({{MatKind::symmetric, kDiag}, {MatKind::skew, kOff}})), PreconditionError);
  // The equality pair is also extremal here: 1.5*16 - 8 = 16.
  EXPECT_NEAR(lili_gap(MatTuple::symmetric({kDiag, kOff})).gap, 0.0, 1e-14);
}

TEST(Lili, InductionRewrite) {
  Rng rng(46);
  for (int t = 0; t < 300; ++t) {
    const MatTuple x = sorted_by_norm(sample_stress_tuple(2 + t % 4, 2 + t % 4, rng));
    EXPECT_LT(lili_induction_residual(x), 1e-12);
  }
  EXPECT_THROW(lili_induction_residual(MatTuple::symmetric({Matrix(2, 2), kDiag})), PreconditionError);
  EXPECT_THROW(lili_induction_residual(MatTuple::symmetric({kDiag * 0.5, kOff})), PreconditionError);
}

TEST(Comass, AlternatingAndReferences) {
  Rng rng(47);
  FrameMats a;
  for (auto& m : a) m = random_matrix(3, 3, rng);
  const double v = comass_form(a[0], a[1], a[2], a[3]);
  EXPECT_NEAR(comass_form(a[1], a[0], a[2], a[3]), -v, 1e-12);
  EXPECT_NEAR(comass_form(a[0], a[2], a[1], a[3]), -v, 1e-12);
  EXPECT_NEAR(comass_form(a[0], a[1], a[3], a[2]), -v, 1e-12);
  EXPECT_NEAR(comass_form(a[0], a[1], a[2], a[2]), 0.0, 1e-12);
  // Multilinear.
  EXPECT_NEAR(comass_form(a[0] * 2.0, a[1], a[2], a[3]), 2 * v, 1e-12);

  EXPECT_NEAR(*reference_comass(3, 6), std::sqrt(1.5), 1e-15);
  EXPECT_NEAR(*reference_comass(3, 7), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(*reference_comass(4, 8), 1.5, 1e-15);
  EXPECT_FALSE(reference_comass(5, 9).has_value());
}

TEST(Comass, OuterBracketAndFrameValidation) {
  const Matrix a = Matrix::from_rows({{1, 0}, {0, 0}, {0, 0}});
  const Matrix b = Matrix::from_rows({{0, 0}, {1, 0}, {0, 0}});
  const Matrix ab = outer_bracket(a, b);
  EXPECT_EQ(ab, Matrix::from_rows({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}));
  EXPECT_THROW(Frame4({a, a, b, b}), PreconditionError);
  EXPECT_THROW(Frame4({a, b, Matrix(2, 2), Matrix(2, 2)}), ShapeError);
}

TEST(Psq, ReductionQuantities) {
  const Psq3Report z = psq_gap(Matrix(3, 3), Matrix(3, 3));
  EXPECT_EQ(z.gap(), 0.0);
  const Matrix b = Matrix::from_rows({{1, 2, 0}, {2, 0, 3}, {0, 3, -1}});
  const Matrix c = Matrix::from_rows({{0, 1, 1}, {1, 2, 0}, {1, 0, 0}});
  const Psq3Report r = psq_gap(b, c);
  EXPECT_DOUBLE_EQ(r.r_sq[0], 9.0 + 0.0);
  EXPECT_DOUBLE_EQ(r.r_sq[1], 0.0 + 1.0);
  EXPECT_DOUBLE_EQ(r.r_sq[2], 4.0 + 1.0);
  EXPECT_DOUBLE_EQ(r.mu_sq, 1.0 + 0.0 + 1.0 + 0.0 + 4.0 + 0.0);
  const double s = oracle::entry_sq_sum(b) + oracle::entry_sq_sum(c);
  EXPECT_NEAR(r.lhs, s * s - 2 * oracle::comm_sq(b, c), 1e-12 * s * s);
  EXPECT_THROW(psq_gap(Matrix(2, 2), Matrix(2, 2)), ShapeError);
}

TEST(Stats, NearTwoOverNAndReproducible) {
  Rng a(5), b(5);
  const CommutatorStats s = commutator_statistics(10, 4000, a);
  const CommutatorStats t = commutator_statistics(10, 4000, b);
  EXPECT_EQ(s.mean_ratio, t.mean_ratio);
  EXPECT_EQ(s.stddev, t.stddev);
  EXPECT_NEAR(s.mean_ratio, 0.2, 0.04);
  Rng c(6);
  EXPECT_THROW(commutator_statistics(1, 10, c), PreconditionError);
}
