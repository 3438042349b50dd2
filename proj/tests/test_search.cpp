#include <gtest/gtest.h>

#include <cmath>

#include "ddvv/search.hpp"
#include "ddvv/suite.hpp"
#include "oracles.hpp"

using namespace ddvv;

namespace {

MatTuple unit(MatTuple t) {
  const double s = std::sqrt(t.norm_sq_sum());
  for (std::size_t r = 0; r < t.size(); ++r) t.set(r, t.mat(r) / s);
  return t;
}

MatTuple random_tuple(std::size_t n, std::size_t m_sym, std::size_t m_skew, Rng& rng) {
  std::vector<MatTuple::Item> items;
  for (std::size_t r = 0; r < m_sym; ++r) items.push_back({MatKind::symmetric, random_matrix(n, MatKind::symmetric, rng)});
  for (std::size_t r = 0; r < m_skew; ++r) items.push_back({MatKind::skew, random_matrix(n, MatKind::skew, rng)});
  return unit(MatTuple(std::move(items)));
}

}  // namespace

TEST(Targets, ParseAndValidate) {
  EXPECT_EQ(parse_target("comass"), Target::comass);
  EXPECT_EQ(to_string(Target::bw), "bw");
  EXPECT_THROW(parse_target("nope"), PreconditionError);
  SearchConfig c;
  c.target = Target::comass;
  c.n = 3;
  c.comass_m = 3;
  EXPECT_THROW(c.validate(), PreconditionError);
  c.comass_m = 6;
  EXPECT_NO_THROW(c.validate());
  c = SearchConfig{};
  c.target = Target::lili;
  c.m_skew = 1;
  EXPECT_THROW(c.validate(), PreconditionError);
}

TEST(Gradients, ObjectiveMatchesFiniteDifferences) {
  Rng rng(71);
  for (int t = 0; t < 30; ++t) {
    const MatTuple x = random_tuple(2 + t % 3, 1 + t % 3, t % 2, rng);
    EXPECT_LT(oracle::fd_gradient_error(pairwise_commutator_sum, x, objective_grad(x)), 1e-6);
  }
}

TEST(Gradients, TargetsMatchFiniteDifferences) {
  Rng rng(72);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 3;
    const MatTuple mixed = random_tuple(n, 2, 1, rng);
    const MatTuple sym = random_tuple(n, 3, 0, rng);
    const MatTuple pair = unit(MatTuple::of_kind(MatKind::general, {random_matrix(n, n, rng), random_matrix(n, n, rng)}));
    auto f = [](Target tg) { return [tg](const MatTuple& x) { return target_value(tg, x); }; };
    EXPECT_LT(oracle::fd_gradient_error(f(Target::ddvv), mixed, target_gradient(Target::ddvv, mixed, false)), 1e-6);
    EXPECT_LT(oracle::fd_gradient_error(f(Target::lili), sym, target_gradient(Target::lili, sym, false)), 1e-6);
    EXPECT_LT(oracle::fd_gradient_error(f(Target::bw), pair, target_gradient(Target::bw, pair, false)), 1e-6);
    EXPECT_LT(oracle::fd_gradient_error(f(Target::ddvv), sym, target_gradient(Target::ddvv, sym, true), true), 1e-6);
  }
}

TEST(Gradients, ComassMatchesFiniteDifferences) {
  Rng rng(73);
  for (int t = 0; t < 20; ++t) {
    FrameMats a;
    for (auto& m : a) m = random_matrix(3, 4, rng);
    const FrameMats g = comass_gradient(a);
    double diff = 0, norm = 0;
    const double h = 1e-5;
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
          FrameMats p = a, q = a;
          p[k](i, j) += h;
          q[k](i, j) -= h;
          const double fd = (comass_form(p[0], p[1], p[2], p[3]) - comass_form(q[0], q[1], q[2], q[3])) / (2 * h);
          diff += (fd - g[k](i, j)) * (fd - g[k](i, j));
          norm += g[k](i, j) * g[k](i, j);
        }
    EXPECT_LT(std::sqrt(diff / norm), 1e-6);
  }
}

TEST(Frames, OrthonormalizeIsOrthonormal) {
  Rng rng(74);
  FrameMats a;
  for (auto& m : a) m = random_matrix(3, 3, rng);
  const FrameMats o = orthonormalize_frame(a);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(frob_inner(o[i], o[j]), i == j ? 1.0 : 0.0, 1e-14);
  EXPECT_NO_THROW(Frame4{o});
}

TEST(Ascent, DdvvTwoByTwoReachesEqualityPair) {
  SearchConfig c;
  c.n = 2;
  c.m_sym = 2;
  c.restarts = 4;
  c.max_iters = 2000;
  c.base_seed = 7;
  const SearchRun run = run_search(c);
  EXPECT_GE(run.best_value, 0.9999);
  EXPECT_LE(run.best_value, 1.0 + 1e-12);
  for (const auto& r : run.records) {
    EXPECT_TRUE(r.monotone);
    EXPECT_NEAR(std::get<MatTuple>(r.point).norm_sq_sum(), 1.0, 1e-12);
  }
}

TEST(Ascent, DeterministicAndJobIndependent) {
  SearchConfig c;
  c.n = 3;
  c.m_sym = 2;
  c.m_skew = 1;
  c.restarts = 6;
  c.max_iters = 300;
  c.base_seed = 3;
  const SearchRun a = run_search(c, 1), b = run_search(c, 3);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    EXPECT_EQ(a.records[k].final_value, b.records[k].final_value);
    EXPECT_EQ(a.records[k].iterations, b.records[k].iterations);
  }
  EXPECT_EQ(a.best_restart, b.best_restart);
}

TEST(Ascent, ComassHitsReference) {
  SearchConfig c;
  c.target = Target::comass;
  c.n = 3;
  c.comass_m = 6;
  c.restarts = 4;
  const SearchRun run = run_search(c);
  EXPECT_NEAR(run.best_value, std::sqrt(1.5), 1e-6);
  EXPECT_LE(run.best_value, std::sqrt(1.5) + 1e-9);
  const Frame4& f = std::get<Frame4>(run.best_point);
  EXPECT_EQ(f.rows(), 3u);
  EXPECT_EQ(f.cols(), 3u);
}

TEST(Stationarity, EqualityPairTriple) {
  const Matrix a = Matrix::diagonal({0.5, -0.5});
  const Matrix b = Matrix::from_rows({{0, 0.5}, {0.5, 0}});
  const MatTuple t = MatTuple::symmetric({a, b, Matrix(2, 2)});
  EXPECT_LT(stationarity_residual(t), 1e-15);
  EXPECT_THROW(stationarity_residual(MatTuple::symmetric({a, b, a})), PreconditionError);
  EXPECT_THROW(stationarity_residual(MatTuple::symmetric({a, b})), PreconditionError);
  EXPECT_GE(stationarity_residual(MatTuple::symmetric({a, b, a}), true), 0.0);
}

TEST(Minimize, ShrinksSyntheticWitness) {
  // Violated iff the (0,0) entry of A_1 carries more than half the mass.
  const GapFunction dominant = [](const MatTuple& t) {
    const double s = t.norm_sq_sum(), a = t.mat(0)(0, 0);
    return make_gap(s * s, 2 * a * a * s, s * s);
  };
  Rng rng(75);
  Matrix a1 = random_matrix(3, MatKind::symmetric, rng) * 0.05;
  a1(0, 0) = 1.0;
  const MatTuple t = MatTuple::symmetric({a1, random_matrix(3, MatKind::symmetric, rng) * 0.05});
  const MatTuple w = minimize_counterexample(t, dominant);
  EXPECT_EQ(count_nonzeros(w), 1u);
  EXPECT_NEAR(w.norm_sq_sum(), 1.0, 1e-15);
  EXPECT_LT(dominant(w).gap, 0.0);
  EXPECT_THROW(minimize_counterexample(MatTuple::symmetric({Matrix::identity(2)})), PreconditionError);
}

TEST(SortedByNorm, Stable) {
  const MatTuple t = MatTuple::symmetric({Matrix::identity(2), Matrix::identity(2) * 3.0, Matrix::identity(2) * -1.0});
  const MatTuple s = sorted_by_norm(t);
  EXPECT_EQ(s.mat(0)(0, 0), 3.0);
  EXPECT_EQ(s.mat(1)(0, 0), 1.0);
  EXPECT_EQ(s.mat(2)(0, 0), -1.0);
}
