#include "ddvv/reduce.hpp"

#include <cmath>

namespace ddvv {

namespace {

constexpr double kOrthogonalityTol = 1e-12;
constexpr double kGramCutoff = 1e-12;

double orthogonality_defect(const Matrix& a) {
  const Matrix d = a * a.transpose() - Matrix::identity(a.rows());
  return frob_norm(d);
}

Matrix gram_matrix(const MatTuple& t) {
  Matrix g(t.size(), t.size());
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t s = r; s < t.size(); ++s) {
      g(r, s) = frob_inner(t.mat(r), t.mat(s));
      g(s, r) = g(r, s);
    }
  return g;
}

// Sign of the first entry whose magnitude is above rounding level.
double leading_sign(std::span<const double> v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  const double floor = 1e-12 * std::sqrt(norm);
  for (double x : v) {
    if (std::abs(x) > floor) return x < 0.0 ? -1.0 : 1.0;
  }
  return 1.0;
}

void negate_row(Matrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

Matrix conjugate(const Matrix& p, const Matrix& a) { return p * a * p.transpose(); }

void require_symmetric(const MatTuple& t, const char* op) {
  if (!t.all_of(MatKind::symmetric)) {
    throw PreconditionError(std::string(op) + ": tuple must be symmetric");
  }
}

}  // namespace

GroupElement::GroupElement(Matrix p, Matrix q) : p_(std::move(p)), q_(std::move(q)) {
  if (!p_.is_square() || !q_.is_square()) throw ShapeError("GroupElement: p and q must be square");
  if (orthogonality_defect(p_) > kOrthogonalityTol || orthogonality_defect(q_) > kOrthogonalityTol) {
    throw PreconditionError("GroupElement: p and q must be orthogonal");
  }
}

GroupElement GroupElement::identity(std::size_t n, std::size_t m) {
  return GroupElement(Matrix::identity(n), Matrix::identity(m));
}

GroupElement GroupElement::random_for(const MatTuple& shape, Rng& rng) {
  Matrix p = random_orthogonal(shape.n(), rng);
  const std::size_t m = shape.size();
  Matrix q(m, m);
  for (MatKind kind : {MatKind::symmetric, MatKind::skew, MatKind::general}) {
    std::vector<std::size_t> slots;
    for (std::size_t r = 0; r < m; ++r)
      if (shape.kind(r) == kind) slots.push_back(r);
    if (slots.empty()) continue;
    const Matrix block = random_orthogonal(slots.size(), rng);
    for (std::size_t a = 0; a < slots.size(); ++a)
      for (std::size_t b = 0; b < slots.size(); ++b) q(slots[a], slots[b]) = block(a, b);
  }
  return GroupElement(std::move(p), std::move(q));
}

MatTuple g_action(const GroupElement& g, const MatTuple& t) {
  const std::size_t m = t.size();
  if (g.p().rows() != t.n() || g.q().rows() != m) {
    throw ShapeError("g_action: group element does not match tuple dimensions");
  }
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < m; ++j) {
      if (t.kind(r) != t.kind(j) && std::abs(g.q()(r, j)) > kOrthogonalityTol) {
        throw PreconditionError("g_action: q mixes entries of different kinds");
      }
    }

  std::vector<Matrix> conj;
  conj.reserve(m);
  for (const auto& item : t) conj.push_back(conjugate(g.p(), item.mat));

  std::vector<MatTuple::Item> items;
  items.reserve(m);
  for (std::size_t r = 0; r < m; ++r) {
    Matrix acc(t.n(), t.n());
    for (std::size_t j = 0; j < m; ++j) {
      if (t.kind(j) == t.kind(r) && g.q()(r, j) != 0.0) axpy(g.q()(r, j), conj[j], acc);
    }
    items.push_back({t.kind(r), std::move(acc)});
  }
  return MatTuple(std::move(items));
}

Canonical canonicalize(const MatTuple& t) {
  require_symmetric(t, "canonicalize");
  const std::size_t m = t.size();

  // O(m) part: rows of q are Gram eigenvectors, descending.
  Matrix q = eig_sym(gram_matrix(t)).q;
  auto rotated = [&](std::size_t r) {
    Matrix acc(t.n(), t.n());
    for (std::size_t j = 0; j < m; ++j) axpy(q(r, j), t.mat(j), acc);
    return enforce_kind(std::move(acc), MatKind::symmetric);
  };

  const Matrix lead = rotated(0);
  SymEigen e = eig_sym(lead);
  const double tiny = 1e-12 * frob_norm(lead);
  // Make the extreme eigenvalue of largest magnitude the positive one.
  if (e.values.front() + e.values.back() < -tiny) {
    negate_row(q, 0);
    e = eig_sym(rotated(0));
  }

  Matrix p = e.q;
  std::vector<Matrix> conj;
  for (std::size_t r = 1; r < m; ++r) conj.push_back(conjugate(p, rotated(r)));

  // Conjugating by a diagonal sign matrix leaves diagonals alone, so the
  // sign of each later entry is read off its diagonal first.
  for (std::size_t r = 1; r < m; ++r) {
    std::vector<double> diag(t.n());
    for (std::size_t i = 0; i < t.n(); ++i) diag[i] = conj[r - 1](i, i);
    const double floor = 1e-12 * frob_norm(conj[r - 1]);
    bool any = false;
    for (double d : diag) any = any || std::abs(d) > floor;
    const double sign = any ? leading_sign(diag) : leading_sign(conj[r - 1].entries());
    if (sign < 0.0) {
      negate_row(q, r);
      conj[r - 1] *= -1.0;
    }
  }

  // Eigenvector signs: d_0 = +1, then d_j makes the first significant
  // (i < j) off-diagonal entry of A_2, A_3, ... positive.
  std::vector<double> d(t.n(), 0.0);
  d[0] = 1.0;
  for (std::size_t j = 1; j < t.n(); ++j) {
    for (std::size_t r = 0; r < conj.size() && d[j] == 0.0; ++r) {
      const double floor = 1e-12 * frob_norm(conj[r]);
      for (std::size_t i = 0; i < j; ++i) {
        if (std::abs(conj[r](i, j)) > floor) {
          d[j] = d[i] * conj[r](i, j) < 0.0 ? -1.0 : 1.0;
          break;
        }
      }
    }
    if (d[j] == 0.0) d[j] = 1.0;
    if (d[j] < 0.0) negate_row(p, j);
  }

  GroupElement g(std::move(p), std::move(q));
  MatTuple out = g_action(g, t);
  Matrix diag(t.n(), t.n());
  for (std::size_t i = 0; i < t.n(); ++i) diag(i, i) = out.mat(0)(i, i);
  out.set(0, std::move(diag));
  return {std::move(out), std::move(g)};
}

SpanReduction span_reduce(const MatTuple& t) {
  require_symmetric(t, "span_reduce");
  const std::size_t m = t.size();
  const SymEigen e = eig_sym(gram_matrix(t));
  const double cutoff = kGramCutoff * t.norm_sq_sum();

  std::vector<Matrix> mats;
  mats.reserve(m);
  std::size_t kept = 0;
  for (std::size_t r = 0; r < m; ++r) {
    Matrix acc(t.n(), t.n());
    if (e.values[r] > cutoff) {
      for (std::size_t j = 0; j < m; ++j) axpy(e.q(r, j), t.mat(j), acc);
      if (leading_sign(acc.entries()) < 0.0) acc *= -1.0;
      ++kept;
    }
    mats.push_back(std::move(acc));
  }
  return {MatTuple::symmetric(std::move(mats)), kept};
}

BwEmbedding bw_embed(const Matrix& x, const Matrix& y) {
  if (!x.is_square() || x.rows() != y.rows() || x.cols() != y.cols()) {
    throw ShapeError("bw_embed: x and y must be square of equal size");
  }
  const double nx = frob_norm(x);
  const double ny = frob_norm(y);
  if (nx == 0.0 || ny == 0.0) throw PreconditionError("bw_embed: x and y must be nonzero");
  const double t = std::sqrt(ny / nx);
  auto [a1, a3] = split_sym_skew(x);
  auto [a2, a4] = split_sym_skew(y);
  std::vector<MatTuple::Item> items;
  items.push_back({MatKind::symmetric, a1 * t});
  items.push_back({MatKind::symmetric, a2 / t});
  items.push_back({MatKind::skew, a3 * t});
  items.push_back({MatKind::skew, a4 / t});
  return {MatTuple(std::move(items)), t};
}

}  // namespace ddvv
