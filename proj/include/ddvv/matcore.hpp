// Dense small-matrix kernel: Frobenius geometry, commutators, the Jacobi
// symmetric eigensolver and seeded structured sampling.
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ddvv {

/// Raised when operands have incompatible shapes.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative kernel exceeds its hard iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Rng = std::mt19937_64;

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);
  static Matrix diagonal(std::initializer_list<double> diag);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> entries() { return data_; }
  std::span<const double> entries() const { return data_; }

  Matrix transpose() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);
  Matrix& operator/=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator/(Matrix a, double s);
/// Matrix product.
Matrix operator*(const Matrix& a, const Matrix& b);

/// a += s * b
void axpy(double s, const Matrix& b, Matrix& a);

double frob_inner(const Matrix& a, const Matrix& b);
double frob_norm_sq(const Matrix& a);
double frob_norm(const Matrix& a);
double trace(const Matrix& a);

/// ab - ba. Both products are accumulated in the same index order, so the
/// result is exactly skew for two exactly symmetric inputs and exactly
/// symmetric for one symmetric and one skew input.
Matrix commutator(const Matrix& a, const Matrix& b);

struct SymSkewParts {
  Matrix sym;
  Matrix skew;
};

/// ((x + x^T)/2, (x - x^T)/2).
SymSkewParts split_sym_skew(const Matrix& x);

/// a - (tr a / n) I.
Matrix traceless(const Matrix& a);

struct SymEigen {
  /// Descending; ties keep the order the sweeps left them in.
  std::vector<double> values;
  /// Orthogonal, rows are eigenvectors: a = q^T diag(values) q.
  Matrix q;
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for exactly symmetric input.
SymEigen eig_sym(const Matrix& a);

enum class MatKind { symmetric, skew, general };

std::string_view to_string(MatKind kind);
MatKind parse_kind(std::string_view name);

/// Exact (entrywise) structural test.
bool satisfies_kind(const Matrix& a, MatKind kind);

/// Rebuilds the lower triangle from the upper one so `a` satisfies `kind`
/// exactly. Skew input also gets a zero diagonal. General input is returned
/// unchanged.
Matrix enforce_kind(Matrix a, MatKind kind);

/// Orthogonal projection onto the subspace of `kind` (sym/skew part).
Matrix project_kind(const Matrix& a, MatKind kind);

/// i.i.d. standard normal entries, symmetrized or skew-symmetrized per kind.
Matrix random_matrix(std::size_t n, MatKind kind, Rng& rng);
Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Gram-Schmidt orthonormalization of a Gaussian matrix, column by column,
/// each column signed so its first nonzero entry is positive.
Matrix random_orthogonal(std::size_t n, Rng& rng);

/// Ordered tuple of n×n matrices, each tagged with a kind that is enforced
/// exactly at construction.
class MatTuple {
 public:
  struct Item {
    MatKind kind;
    Matrix mat;
  };

  explicit MatTuple(std::vector<Item> items);

  static MatTuple symmetric(std::vector<Matrix> mats);
  static MatTuple of_kind(MatKind kind, std::vector<Matrix> mats);

  std::size_t n() const { return n_; }
  std::size_t size() const { return items_.size(); }
  std::size_t count(MatKind kind) const;

  const Item& operator[](std::size_t r) const { return items_[r]; }
  const Matrix& mat(std::size_t r) const { return items_[r].mat; }
  MatKind kind(std::size_t r) const { return items_[r].kind; }
  bool all_of(MatKind kind) const;

  /// Replaces matrix r; the kind of slot r is re-enforced.
  void set(std::size_t r, Matrix m);

  /// Sum of squared Frobenius norms.
  double norm_sq_sum() const;

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  std::size_t n_ = 0;
  std::vector<Item> items_;
};

}  // namespace ddvv
