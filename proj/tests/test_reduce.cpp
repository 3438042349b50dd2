#include <gtest/gtest.h>

#include <cmath>

#include "ddvv/inequal.hpp"
#include "ddvv/reduce.hpp"
#include "ddvv/suite.hpp"
#include "oracles.hpp"

using namespace ddvv;

namespace {

Matrix gram(const MatTuple& t) {
  Matrix g(t.size(), t.size());
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t s = 0; s < t.size(); ++s) {
      double v = 0;
      for (std::size_t i = 0; i < t.n(); ++i)
        for (std::size_t j = 0; j < t.n(); ++j) v += t.mat(r)(i, j) * t.mat(s)(i, j);
      g(r, s) = v;
    }
  return g;
}

}  // namespace

TEST(GroupAction, PreservesGapAndNorms) {
  Rng rng(61);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + t % 4, m = 2 + t % 3;
    const MatTuple x = sample_stress_tuple(n, m, rng);
    const MatTuple y = g_action(GroupElement::random_for(x, rng), x);
    const GapReport a = ddvv_gap(x), b = ddvv_gap(y);
    EXPECT_NEAR(a.lhs, b.lhs, 1e-12 * a.scale);
    EXPECT_NEAR(a.rhs, b.rhs, 1e-12 * a.scale);
  }
}

TEST(GroupAction, MixedKindsStayInClass) {
  Rng rng(62);
  MatTuple x({{MatKind::symmetric, random_matrix(3, MatKind::symmetric, rng)},
              {MatKind::skew, random_matrix(3, MatKind::skew, rng)},
              {MatKind::symmetric, random_matrix(3, MatKind::symmetric, rng)}});
  const GroupElement g = GroupElement::random_for(x, rng);
  EXPECT_EQ(g.q()(0, 1), 0.0);
  EXPECT_EQ(g.q()(1, 2), 0.0);
  const MatTuple y = g_action(g, x);
  EXPECT_EQ(y.kind(1), MatKind::skew);
  EXPECT_NEAR(ddvv_gap(x).gap, ddvv_gap(y).gap, 1e-12 * ddvv_gap(x).scale);

  // A q that couples the symmetric and skew slots is rejected.
  const double c = std::sqrt(0.5);
  const Matrix q = Matrix::from_rows({{c, c, 0}, {-c, c, 0}, {0, 0, 1}});
  EXPECT_THROW(g_action(GroupElement(Matrix::identity(3), q), x), PreconditionError);
  EXPECT_THROW(g_action(GroupElement::identity(2, 3), x), ShapeError);
  EXPECT_THROW(GroupElement(Matrix::from_rows({{1, 1}, {0, 1}}), Matrix::identity(1)), PreconditionError);
}

TEST(Canonicalize, StructureAndIdempotence) {
  Rng rng(63);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 4, m = 2 + t % 3;
    const MatTuple x = sample_stress_tuple(n, m, rng);
    const Canonical c = canonicalize(x);
    const double s = x.norm_sq_sum();
    // A1 diagonal, descending.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) {
          EXPECT_EQ(c.tuple.mat(0)(i, j), 0.0);
        }
    for (std::size_t i = 1; i < n; ++i) EXPECT_GE(c.tuple.mat(0)(i - 1, i - 1), c.tuple.mat(0)(i, i));
    // Gram matrix diagonal with descending entries.
    const Matrix g = gram(c.tuple);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t q = 0; q < m; ++q)
        if (r != q) {
          EXPECT_NEAR(g(r, q), 0.0, 1e-10 * s);
        }
    for (std::size_t r = 1; r < m; ++r) EXPECT_GE(g(r - 1, r - 1), g(r, r) - 1e-10 * s);
    // Same orbit: invariants agree, and g reproduces the output.
    EXPECT_NEAR(ddvv_gap(c.tuple).gap, ddvv_gap(x).gap, 1e-10 * s * s);
    const MatTuple again = g_action(c.g, x);
    for (std::size_t r = 0; r < m; ++r) EXPECT_LT(frob_norm(again.mat(r) - c.tuple.mat(r)), 1e-10 * std::sqrt(s));
    // Idempotent up to rounding.
    const Canonical cc = canonicalize(c.tuple);
    for (std::size_t r = 0; r < m; ++r) EXPECT_LT(frob_norm(cc.tuple.mat(r) - c.tuple.mat(r)), 1e-9 * std::sqrt(s));
  }
}

TEST(Canonicalize, OrbitMatesAgree) {
  Rng rng(64);
  for (int t = 0; t < 100; ++t) {
    const MatTuple x = MatTuple::symmetric({random_matrix(3, MatKind::symmetric, rng) * 3.0,
                                            random_matrix(3, MatKind::symmetric, rng) * 2.0,
                                            random_matrix(3, MatKind::symmetric, rng)});
    const MatTuple y = g_action(GroupElement::random_for(x, rng), x);
    const Canonical a = canonicalize(x), b = canonicalize(y);
    for (std::size_t r = 0; r < 3; ++r) EXPECT_LT(frob_norm(a.tuple.mat(r) - b.tuple.mat(r)), 1e-8 * 10);
  }
}

TEST(SpanReduce, DropsDependentDirections) {
  Rng rng(65);
  const Matrix a = random_matrix(3, MatKind::symmetric, rng);
  const Matrix b = random_matrix(3, MatKind::symmetric, rng);
  const MatTuple x = MatTuple::symmetric({a, b, a * 2.0 - b, b * 0.5});
  const SpanReduction s = span_reduce(x);
  EXPECT_EQ(s.effective_m, 2u);
  EXPECT_EQ(s.tuple.size(), 4u);
  EXPECT_EQ(frob_norm(s.tuple.mat(2)), 0.0);
  EXPECT_EQ(frob_norm(s.tuple.mat(3)), 0.0);
  const GapReport g0 = ddvv_gap(x), g1 = ddvv_gap(s.tuple);
  EXPECT_NEAR(g0.lhs, g1.lhs, 1e-10 * g0.scale);
  EXPECT_NEAR(g0.rhs, g1.rhs, 1e-10 * g0.scale);
  EXPECT_EQ(span_reduce(MatTuple::symmetric({Matrix(2, 2)})).effective_m, 0u);
}

TEST(BwEmbed, NormsAndSplit) {
  Rng rng(66);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 4;
    const Matrix x = random_matrix(n, n, rng) * 3.0, y = random_matrix(n, n, rng);
    const BwEmbedding e = bw_embed(x, y);
    const double nx = std::sqrt(oracle::entry_sq_sum(x)), ny = std::sqrt(oracle::entry_sq_sum(y));
    EXPECT_NEAR(e.t_opt, std::sqrt(ny / nx), 1e-14 * e.t_opt);
    EXPECT_NEAR(e.tuple.norm_sq_sum(), 2 * nx * ny, 1e-12 * nx * ny);
    EXPECT_EQ(e.tuple.kind(0), MatKind::symmetric);
    EXPECT_EQ(e.tuple.kind(3), MatKind::skew);
    // The scaled pieces still recombine to the original commutator.
    const Matrix xs = (e.tuple.mat(0) + e.tuple.mat(2)) / e.t_opt;
    const Matrix ys = (e.tuple.mat(1) + e.tuple.mat(3)) * e.t_opt;
    EXPECT_NEAR(oracle::comm_sq(xs, ys), oracle::comm_sq(x, y), 1e-11 * nx * nx * ny * ny);
  }
  EXPECT_THROW(bw_embed(Matrix(2, 2), Matrix::identity(2)), PreconditionError);
}

TEST(Canonicalize, RecoversEqualityPair) {
  Rng rng(67);
  const MatTuple pair = MatTuple::symmetric({Matrix::diagonal({1.0, -1.0}), Matrix::from_rows({{0, 1}, {1, 0}})});
  for (int t = 0; t < 50; ++t) {
    const Canonical c = canonicalize(g_action(GroupElement::random_for(pair, rng), pair));
    EXPECT_NEAR(c.tuple.mat(0)(0, 0), 1.0, 1e-12);
    EXPECT_NEAR(c.tuple.mat(0)(1, 1), -1.0, 1e-12);
  }
}
