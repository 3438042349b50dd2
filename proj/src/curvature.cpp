#include "ddvv/curvature.hpp"

#include <cmath>

namespace ddvv {

namespace {

// sum_{r<s} sum_{i<j} (sum_k h^r_ik h^s_jk - h^s_ik h^r_jk)^2
double normal_curvature_sum(const FundForm& f) {
  const std::size_t n = f.n();
  double total = 0.0;
  for (std::size_t r = 0; r < f.m(); ++r)
    for (std::size_t s = r + 1; s < f.m(); ++s)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          double k_sum = 0.0;
          for (std::size_t k = 0; k < n; ++k) {
            k_sum += f.h(r, i, k) * f.h(s, j, k) - f.h(s, i, k) * f.h(r, j, k);
          }
          total += k_sum * k_sum;
        }
  return total;
}

double pair_count(const FundForm& f) {
  const double n = static_cast<double>(f.n());
  return n * (n - 1.0);
}

}  // namespace

FundForm::FundForm(std::vector<Matrix> blocks, double c) : c_(c), blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw PreconditionError("FundForm: codimension m must be at least 1");
  n_ = blocks_.front().rows();
  if (n_ < 2) throw PreconditionError("FundForm: tangent dimension n must be at least 2");
  if (!std::isfinite(c_)) throw PreconditionError("FundForm: c must be finite");
  for (const auto& b : blocks_) {
    if (b.rows() != n_ || b.cols() != n_) throw ShapeError("FundForm: blocks must be n x n");
    if (!b.all_finite()) throw PreconditionError("FundForm: non-finite coefficient");
    if (!satisfies_kind(b, MatKind::symmetric)) {
      throw PreconditionError("FundForm: h[r] must be exactly symmetric");
    }
  }
}

FundForm FundForm::from_tuple(const MatTuple& t, double c) {
  if (!t.all_of(MatKind::symmetric)) {
    throw PreconditionError("FundForm::from_tuple: all matrices must be symmetric");
  }
  std::vector<Matrix> blocks;
  for (const auto& item : t) blocks.push_back(item.mat);
  return FundForm(std::move(blocks), c);
}

MatTuple to_tuple(const FundForm& f) { return MatTuple::symmetric(f.blocks()); }

double mean_curvature_sq(const FundForm& f) {
  const double n = static_cast<double>(f.n());
  double s = 0.0;
  for (const auto& a : f.blocks()) {
    const double h = trace(a) / n;
    s += h * h;
  }
  return s;
}

double scalar_curvature(const FundForm& f) {
  double s = 0.0;
  for (const auto& a : f.blocks()) {
    const double tr = trace(a);
    s += tr * tr - frob_norm_sq(a);
  }
  return f.c() + s / pair_count(f);
}

double normal_scalar_curvature(const FundForm& f) {
  return 2.0 / pair_count(f) * std::sqrt(normal_curvature_sum(f));
}

double curvature_scale(const FundForm& f) {
  double s = 1.0;
  for (const auto& a : f.blocks()) s += frob_norm_sq(a);
  return s * s;
}

GapReport geometric_gap(const FundForm& f) {
  return make_gap(mean_curvature_sq(f) + f.c(),
                  scalar_curvature(f) + normal_scalar_curvature(f), curvature_scale(f));
}

GapReport chen_gap(const FundForm& f) {
  return make_gap(mean_curvature_sq(f) + f.c(), scalar_curvature(f), curvature_scale(f));
}

GapReport eq1a_gap(const FundForm& f) {
  const std::size_t n = f.n();
  double diag_part = 0.0;
  double off_part = 0.0;
  for (std::size_t r = 0; r < f.m(); ++r)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = f.h(r, i, i) - f.h(r, j, j);
        diag_part += d * d;
        off_part += f.h(r, i, j) * f.h(r, i, j);
      }
  const double two_n = 2.0 * static_cast<double>(n);
  return make_gap(diag_part + two_n * off_part, two_n * std::sqrt(normal_curvature_sum(f)),
                  curvature_scale(f));
}

}  // namespace ddvv
