#include "ddvv/inequal.hpp"

#include <algorithm>
#include <cmath>

namespace ddvv {

namespace {

double trace_of_product(const Matrix& x, const Matrix& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) s += x(i, j) * y(j, i);
  return s;
}

void require_no_general(const MatTuple& t, const char* op) {
  if (t.count(MatKind::general) != 0) {
    throw PreconditionError(std::string(op) + ": general-kind matrices are not allowed");
  }
}

}  // namespace

double pairwise_commutator_sum(const MatTuple& t) {
  double s = 0.0;
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t q = r + 1; q < t.size(); ++q) s += frob_norm_sq(commutator(t.mat(r), t.mat(q)));
  return s;
}

GapReport ddvv_gap(const MatTuple& t) {
  require_no_general(t, "ddvv_gap");
  const double total = t.norm_sq_sum();
  return make_gap(total * total, 2.0 * pairwise_commutator_sum(t), total * total);
}

GapReport bw_gap(const Matrix& x, const Matrix& y) {
  const double xx = frob_norm_sq(x);
  const double yy = frob_norm_sq(y);
  const double c = frob_norm_sq(commutator(x, y));
  return make_gap(2.0 * xx * yy, c, xx * yy);
}

GapReport lili_gap(const MatTuple& t) {
  if (!t.all_of(MatKind::symmetric)) {
    throw PreconditionError("lili_gap: all matrices must be symmetric");
  }
  double total = 0.0;
  double quartic = 0.0;
  for (const auto& item : t) {
    const double nn = frob_norm_sq(item.mat);
    total += nn;
    quartic += nn * nn;
  }
  return make_gap(1.5 * total * total - quartic, 2.0 * pairwise_commutator_sum(t), total * total);
}

double lili_induction_residual(const MatTuple& t) {
  const GapReport full = lili_gap(t);
  const double t_sq = frob_norm_sq(t.mat(0));
  if (t_sq == 0.0) throw PreconditionError("lili_induction_residual: A_1 must be nonzero");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (frob_norm_sq(t.mat(i)) > t_sq) {
      throw PreconditionError("lili_induction_residual: tuple must be sorted with |A_1| largest");
    }
  }
  const Matrix unit_lead = t.mat(0) / std::sqrt(t_sq);

  double rest = 0.0;
  double rest_quartic = 0.0;
  double lead_brackets = 0.0;
  double rest_brackets = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double nn = frob_norm_sq(t.mat(i));
    rest += nn;
    rest_quartic += nn * nn;
    lead_brackets += frob_norm_sq(commutator(unit_lead, t.mat(i)));
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      rest_brackets += frob_norm_sq(commutator(t.mat(i), t.mat(j)));
    }
  }
  const double a = 2.0 * lead_brackets - 3.0 * rest;
  const double rewritten = 0.5 * t_sq * t_sq - t_sq * a + 1.5 * rest * rest - rest_quartic -
                           2.0 * rest_brackets;
  return std::abs(full.gap - rewritten) / full.scale;
}

Frame4::Frame4(std::array<Matrix, 4> mats) : mats_(std::move(mats)) {
  for (const auto& m : mats_) {
    if (m.rows() != mats_[0].rows() || m.cols() != mats_[0].cols()) {
      throw ShapeError("Frame4: all four matrices must share a shape");
    }
  }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(frob_inner(mats_[i], mats_[j]) - expected) > 1e-12) {
        throw PreconditionError("Frame4: matrices are not Frobenius-orthonormal");
      }
    }
}

Matrix outer_bracket(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("outer_bracket: shape mismatch");
  }
  const std::size_t m = a.rows();
  Matrix out(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double ab = 0.0;
      double ba = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        ab += a(i, k) * b(j, k);
        ba += b(i, k) * a(j, k);
      }
      out(i, j) = ab - ba;
    }
  return out;
}

double comass_form(const Matrix& a1, const Matrix& a2, const Matrix& a3, const Matrix& a4) {
  const double t = trace_of_product(outer_bracket(a1, a2), outer_bracket(a3, a4)) +
                   trace_of_product(outer_bracket(a3, a1), outer_bracket(a2, a4)) +
                   trace_of_product(outer_bracket(a2, a3), outer_bracket(a1, a4));
  return -0.5 * t;
}

double comass_value(const Frame4& f) { return comass_form(f[0], f[1], f[2], f[3]); }

std::optional<double> reference_comass(std::size_t n, std::size_t ambient_m) {
  if (n == 3 && ambient_m == 6) return std::sqrt(1.5);
  if (n == 3 && ambient_m == 7) return 4.0 / 3.0;
  if (n == 4 && ambient_m == 8) return 1.5;
  return std::nullopt;
}

Psq3Report psq_gap(const Matrix& b, const Matrix& c) {
  for (const Matrix* m : {&b, &c}) {
    if (m->rows() != 3 || m->cols() != 3) throw ShapeError("psq_gap: matrices must be 3x3");
    if (!satisfies_kind(*m, MatKind::symmetric)) {
      throw PreconditionError("psq_gap: matrices must be exactly symmetric");
    }
  }
  Psq3Report r;
  r.r_sq = {b(1, 2) * b(1, 2) + c(1, 2) * c(1, 2), b(0, 2) * b(0, 2) + c(0, 2) * c(0, 2),
            b(0, 1) * b(0, 1) + c(0, 1) * c(0, 1)};
  for (std::size_t i = 0; i < 3; ++i) r.mu_sq += b(i, i) * b(i, i) + c(i, i) * c(i, i);
  const double s = r.r_sq[0] + r.r_sq[1] + r.r_sq[2];
  r.m0 = s * s - 3.0 * (r.r_sq[0] * r.r_sq[1] + r.r_sq[1] * r.r_sq[2] + r.r_sq[2] * r.r_sq[0]);

  const double norms = frob_norm_sq(b) + frob_norm_sq(c);
  r.scale = norms * norms;
  r.lhs = norms * norms - 2.0 * frob_norm_sq(commutator(b, c));

  const double root = std::sqrt(std::max(r.m0, 0.0));
  const double diff = root - r.mu_sq;
  r.condition_holds = 2.0 * root - r.mu_sq >= 0.0;
  r.alt_condition_holds = diff >= 0.0;
  r.rhs = r.condition_holds ? 2.0 * diff * diff : 0.0;
  r.alt_rhs = r.alt_condition_holds ? 2.0 * diff * diff : 0.0;
  return r;
}

CommutatorStats commutator_statistics(std::size_t n, std::size_t samples, Rng& rng) {
  if (n < 2) throw PreconditionError("commutator_statistics: n must be at least 2");
  if (samples < 1) throw PreconditionError("commutator_statistics: samples must be positive");
  std::vector<double> ratios;
  ratios.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const Matrix x = random_matrix(n, MatKind::general, rng);
    const Matrix y = random_matrix(n, MatKind::general, rng);
    ratios.push_back(frob_norm_sq(commutator(x, y)) / (frob_norm_sq(x) * frob_norm_sq(y)));
  }
  CommutatorStats st;
  st.samples = samples;
  double sum = 0.0;
  for (double v : ratios) sum += v;
  st.mean_ratio = sum / static_cast<double>(samples);
  if (samples > 1) {
    double ss = 0.0;
    for (double v : ratios) ss += (v - st.mean_ratio) * (v - st.mean_ratio);
    st.stddev = std::sqrt(ss / static_cast<double>(samples - 1));
  }
  return st;
}

}  // namespace ddvv
