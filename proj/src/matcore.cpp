#include "ddvv/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ddvv {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs "
       << b.rows() << "x" << b.cols();
    throw ShapeError(os.str());
  }
}

void require_square(const Matrix& a, const char* op) {
  if (!a.is_square()) {
    std::ostringstream os;
    os << op << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw ShapeError(os.str());
  }
}

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiRotationThreshold = 1e-13;
constexpr int kOrthogonalAttempts = 16;

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw ShapeError("Matrix: entry count does not match rows*cols");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("Matrix::from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix& Matrix::operator/=(double s) {
  for (double& v : data_) v /= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= -1.0; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }
Matrix operator/(Matrix a, double s) { return a /= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "matrix product: inner dimensions differ (" << a.cols() << " vs " << b.rows() << ")";
    throw ShapeError(os.str());
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

void axpy(double s, const Matrix& b, Matrix& a) {
  require_same_shape(a, b, "axpy");
  auto dst = a.entries();
  auto src = b.entries();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += s * src[k];
}

double frob_inner(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "frob_inner");
  auto x = a.entries();
  auto y = b.entries();
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

double frob_norm_sq(const Matrix& a) {
  double s = 0.0;
  for (double v : a.entries()) s += v * v;
  return s;
}

double frob_norm(const Matrix& a) { return std::sqrt(frob_norm_sq(a)); }

double trace(const Matrix& a) {
  require_square(a, "trace");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_square(a, "commutator");
  require_same_shape(a, b, "commutator");
  const std::size_t n = a.rows();
  Matrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double ab = 0.0;
      double ba = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        ab += a(i, k) * b(k, j);
        ba += b(i, k) * a(k, j);
      }
      c(i, j) = ab - ba;
    }
  return c;
}

SymSkewParts split_sym_skew(const Matrix& x) {
  require_square(x, "split_sym_skew");
  const std::size_t n = x.rows();
  SymSkewParts parts{Matrix(n, n), Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      parts.sym(i, j) = 0.5 * (x(i, j) + x(j, i));
      parts.skew(i, j) = 0.5 * (x(i, j) - x(j, i));
    }
  return parts;
}

Matrix traceless(const Matrix& a) {
  require_square(a, "traceless");
  Matrix out = a;
  const double shift = trace(a) / static_cast<double>(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out(i, i) -= shift;
  return out;
}

SymEigen eig_sym(const Matrix& a) {
  require_square(a, "eig_sym");
  if (!satisfies_kind(a, MatKind::symmetric)) {
    throw PreconditionError("eig_sym: input is not exactly symmetric");
  }
  const std::size_t n = a.rows();
  Matrix w = a;
  Matrix v = Matrix::identity(n);
  const double norm = frob_norm(a);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * w(p, q) * w(p, q);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (;; ++sweep) {
    const double off = off_norm();
    if (off == 0.0 || off <= 1e-15 * norm) break;
    if (sweep == kMaxJacobiSweeps) {
      throw ConvergenceError("eig_sym: Jacobi sweeps exceeded the hard cap");
    }
    const double threshold = kJacobiRotationThreshold * off;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = w(p, q);
        const double g = 100.0 * std::abs(apq);
        // Negligible against both diagonal entries: drop it.
        if (sweep > 3 && std::abs(w(p, p)) + g == std::abs(w(p, p)) &&
            std::abs(w(q, q)) + g == std::abs(w(q, q))) {
          w(p, q) = 0.0;
          w(q, p) = 0.0;
          continue;
        }
        if (std::abs(apq) <= threshold) continue;

        const double h = w(q, q) - w(p, p);
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = apq / h;
        } else {
          const double theta = 0.5 * h / apq;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        w(p, p) -= t * apq;
        w(q, q) += t * apq;
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double wrp = w(r, p);
          const double wrq = w(r, q);
          w(r, p) = wrp - s * (wrq + wrp * tau);
          w(p, r) = w(r, p);
          w(r, q) = wrq + s * (wrp - wrq * tau);
          w(q, r) = w(r, q);
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + vrp * tau);
          v(r, q) = vrq + s * (vrp - vrq * tau);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return w(x, x) > w(y, y); });

  SymEigen out;
  out.values.resize(n);
  out.q = Matrix(n, n);
  out.sweeps = sweep;
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = w(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.q(k, r) = v(r, order[k]);
  }
  return out;
}

std::string_view to_string(MatKind kind) {
  switch (kind) {
    case MatKind::symmetric:
      return "symmetric";
    case MatKind::skew:
      return "skew";
    case MatKind::general:
      return "general";
  }
  return "general";
}

MatKind parse_kind(std::string_view name) {
  if (name == "symmetric") return MatKind::symmetric;
  if (name == "skew") return MatKind::skew;
  if (name == "general") return MatKind::general;
  throw PreconditionError("unknown matrix kind '" + std::string(name) + "'");
}

bool satisfies_kind(const Matrix& a, MatKind kind) {
  if (kind == MatKind::general) return true;
  if (!a.is_square()) return false;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (kind == MatKind::skew && a(i, i) != 0.0) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (kind == MatKind::symmetric && a(j, i) != a(i, j)) return false;
      if (kind == MatKind::skew && a(j, i) != -a(i, j)) return false;
    }
  }
  return true;
}

Matrix enforce_kind(Matrix a, MatKind kind) {
  if (kind == MatKind::general) return a;
  require_square(a, "enforce_kind");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (kind == MatKind::skew) a(i, i) = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      a(j, i) = kind == MatKind::symmetric ? a(i, j) : -a(i, j);
    }
  }
  return a;
}

Matrix project_kind(const Matrix& a, MatKind kind) {
  switch (kind) {
    case MatKind::symmetric:
      return split_sym_skew(a).sym;
    case MatKind::skew:
      return split_sym_skew(a).skew;
    case MatKind::general:
      break;
  }
  return a;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (double& v : m.entries()) v = normal(rng);
  return m;
}

Matrix random_matrix(std::size_t n, MatKind kind, Rng& rng) {
  Matrix m = random_matrix(n, n, rng);
  if (kind == MatKind::general) return m;
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = kind == MatKind::symmetric ? 0.5 * (m(i, j) + m(j, i))
                                             : 0.5 * (m(i, j) - m(j, i));
    }
  return out;
}

Matrix random_orthogonal(std::size_t n, Rng& rng) {
  for (int attempt = 0; attempt < kOrthogonalAttempts; ++attempt) {
    Matrix q = random_matrix(n, n, rng);
    bool degenerate = false;
    for (std::size_t j = 0; j < n && !degenerate; ++j) {
      double original = 0.0;
      for (std::size_t i = 0; i < n; ++i) original += q(i, j) * q(i, j);
      original = std::sqrt(original);
      // Two Gram-Schmidt passes keep q q^T = I at rounding level.
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < j; ++k) {
          double dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += q(i, k) * q(i, j);
          for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
        }
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
      norm = std::sqrt(norm);
      if (!(norm > 1e-10 * original)) {
        degenerate = true;
        break;
      }
      std::size_t lead = 0;
      while (lead < n && q(lead, j) == 0.0) ++lead;
      const double sign = (lead < n && q(lead, j) < 0.0) ? -1.0 : 1.0;
      for (std::size_t i = 0; i < n; ++i) q(i, j) *= sign / norm;
    }
    if (!degenerate) return q;
  }
  throw ConvergenceError("random_orthogonal: degenerate draws exhausted the retry budget");
}

MatTuple::MatTuple(std::vector<Item> items) : items_(std::move(items)) {
  if (items_.empty()) throw PreconditionError("MatTuple: tuple must be nonempty");
  n_ = items_.front().mat.rows();
  if (n_ == 0) throw ShapeError("MatTuple: matrices must be at least 1x1");
  for (auto& item : items_) {
    if (item.mat.rows() != n_ || item.mat.cols() != n_) {
      throw ShapeError("MatTuple: all matrices must be n x n with a common n");
    }
    if (!item.mat.all_finite()) throw PreconditionError("MatTuple: non-finite entry");
    item.mat = enforce_kind(std::move(item.mat), item.kind);
  }
}

MatTuple MatTuple::symmetric(std::vector<Matrix> mats) {
  return of_kind(MatKind::symmetric, std::move(mats));
}

MatTuple MatTuple::of_kind(MatKind kind, std::vector<Matrix> mats) {
  std::vector<Item> items;
  items.reserve(mats.size());
  for (auto& m : mats) items.push_back({kind, std::move(m)});
  return MatTuple(std::move(items));
}

std::size_t MatTuple::count(MatKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      items_.begin(), items_.end(), [kind](const Item& it) { return it.kind == kind; }));
}

bool MatTuple::all_of(MatKind kind) const { return count(kind) == items_.size(); }

void MatTuple::set(std::size_t r, Matrix m) {
  if (m.rows() != n_ || m.cols() != n_) throw ShapeError("MatTuple::set: wrong shape");
  items_.at(r).mat = enforce_kind(std::move(m), items_[r].kind);
}

double MatTuple::norm_sq_sum() const {
  double s = 0.0;
  for (const auto& it : items_) s += frob_norm_sq(it.mat);
  return s;
}

}  // namespace ddvv
