// Exact rational linear algebra over Q.
//
// Everything in the library is computed with GMP rationals; there is no
// floating point anywhere. Dense matrices are row-major QMatrix values,
// sparse operators (representation actions, derivations) are SparseQMatrix.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lieinv {

using Rational = mpq_class;
using Integer = mpz_class;
using QVector = std::vector<Rational>;

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);
  static QMatrix from_columns(const std::vector<QVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Rational> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  QVector column(std::size_t j) const;

  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& rhs) const;
  QVector operator*(const QVector& v) const;
  QMatrix operator+(const QMatrix& rhs) const;
  QMatrix operator-(const QMatrix& rhs) const;
  QMatrix operator-() const;
  QMatrix scaled(const Rational& s) const;
  QMatrix& operator+=(const QMatrix& rhs);

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  Rational trace() const;
  bool operator==(const QMatrix& rhs) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Sparse vector: entries sorted by index, no explicit zeros.
using SparseVector = std::vector<std::pair<std::uint32_t, Rational>>;

SparseVector to_sparse(std::span<const Rational> v);
QVector to_dense(const SparseVector& v, std::size_t dim);
void axpy(SparseVector& y, const Rational& a, const SparseVector& x);  // y += a x

/// Row-compressed sparse square-or-rectangular matrix.
class SparseQMatrix {
 public:
  SparseQMatrix() = default;
  SparseQMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}
  static SparseQMatrix from_dense(const QMatrix& m);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  const SparseVector& row(std::size_t i) const { return rows_[i]; }
  SparseVector& row(std::size_t i) { return rows_[i]; }
  /// Adds `value` to entry (i, j).
  void add(std::size_t i, std::size_t j, const Rational& value);
  Rational get(std::size_t i, std::size_t j) const;

  QMatrix to_dense() const;
  SparseQMatrix transpose() const;
  SparseQMatrix operator*(const SparseQMatrix& rhs) const;
  SparseQMatrix operator+(const SparseQMatrix& rhs) const;
  SparseQMatrix operator-(const SparseQMatrix& rhs) const;
  SparseQMatrix scaled(const Rational& s) const;
  QVector apply(const QVector& v) const;
  std::size_t nonzeros() const;
  bool is_zero() const;
  bool operator==(const SparseQMatrix& rhs) const = default;

 private:
  std::size_t cols_ = 0;
  std::vector<SparseVector> rows_;
};

SparseQMatrix commutator(const SparseQMatrix& a, const SparseQMatrix& b);

// ---------------------------------------------------------------------------
// Rank, kernels and solving.

/// Exact rank over Q by fraction-free elimination (OpenMP-parallel kernel).
std::size_t rank(const QMatrix& m);
/// Single-threaded reference implementation of `rank`, kept for testing.
std::size_t rank_serial(const QMatrix& m);

/// Basis of the right null space, one vector per free column of the RREF.
std::vector<QVector> kernel_basis(const QMatrix& m);

/// Reduced row echelon form; `pivots` receives the pivot column of each
/// non-zero row.
QMatrix rref(const QMatrix& m, std::vector<std::size_t>* pivots = nullptr);

/// Some solution of A x = b, or nullopt if inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);
std::optional<QMatrix> inverse(const QMatrix& m);
Rational determinant(const QMatrix& m);

/// Coefficients c_0..c_n of det(t I - M) = sum c_k t^(n-k) (c_0 = 1).
QVector characteristic_polynomial(const QMatrix& m);

/// Coordinates with respect to a fixed family of independent vectors.
///
/// Used whenever an element known to lie in a span has to be written in a
/// chosen basis: brackets of matrix basis elements, restricted actions on
/// submodules, and so on.
class SpanCoordinates {
 public:
  SpanCoordinates() = default;
  /// `basis` must be linearly independent; throws Error otherwise.
  SpanCoordinates(const std::vector<QVector>& basis, std::size_t ambient_dim);

  std::size_t size() const { return size_; }
  /// Coordinates of v, or nullopt when v is outside the span.
  std::optional<QVector> coordinates(const QVector& v) const;
  std::optional<SparseVector> coordinates(const SparseVector& v) const;

 private:
  std::size_t size_ = 0;
  std::size_t ambient_ = 0;
  std::vector<SparseVector> basis_;
  std::vector<std::size_t> pivot_cols_;
  SparseQMatrix pivot_inverse_;  // inverse of the basis restricted to pivot rows
};

/// Indices of a maximal linearly independent subfamily, chosen greedily in
/// order.
std::vector<std::size_t> independent_subset(const std::vector<QVector>& vectors);

/// Incremental sparse row echelon form over Q.
///
/// Rows are added one at a time and reduced against the stored pivots;
/// `kernel` performs the back-substitution and returns the null space basis
/// of the accumulated system.
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t cols) : cols_(cols) {}
  /// Returns true if the row was independent of the previous ones.
  bool add_row(SparseVector row);
  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<QVector> kernel() const;
  /// Stored rows (leading coefficient 1), by increasing pivot column.
  std::vector<SparseVector> rows() const;
  /// Reduces a row against the stored pivots; zero iff it lies in the span.
  SparseVector reduce(SparseVector row) const;

 private:
  std::size_t cols_;
  std::map<std::uint32_t, SparseVector> pivots_;  // pivot column -> row with leading 1
};

// ---------------------------------------------------------------------------
// Sampling of generic points.

struct SampleConfig {
  std::uint64_t seed = 20180220;
  std::int64_t height = 9;
  int rounds = 6;
};

/// Integer vector with entries in [-height, height]; deterministic in
/// (seed, height, dim, round, stream).
QVector sample_vector(const SampleConfig& cfg, std::size_t dim, std::uint64_t round = 0,
                      std::uint64_t stream = 0);

struct GenericRank {
  std::size_t rank = 0;
  bool stabilised = false;
  QVector point;           // a point attaining `rank`
  int samples = 0;
};

/// Maximises `rank_at` over sampled points with height escalation: stops as
/// soon as two consecutive rounds agree on the running maximum, doubling the
/// height after each disagreement. After cfg.rounds escalations the maximum
/// seen is returned with stabilised = false.
GenericRank generic_max_rank(const SampleConfig& cfg, std::size_t dim,
                             const std::function<std::size_t(const QVector&)>& rank_at,
                             std::uint64_t stream = 0);

// ---------------------------------------------------------------------------
// Univariate helpers.

/// Coefficients (index = power of t) of the polynomial t -> evaluate(t),
/// assumed of degree <= degree_bound, recovered by interpolation at
/// t = 1, 2, ..., degree_bound + 1.
QVector leading_graded_component(const std::function<Rational(const Rational&)>& evaluate,
                                 std::size_t degree_bound);

/// Univariate polynomial over Q, index = power; trailing zeros trimmed.
using UPoly = QVector;
void trim(UPoly& p);
int degree(const UPoly& p);  // -1 for the zero polynomial
UPoly upoly_gcd(UPoly a, UPoly b);  // monic gcd

}  // namespace lieinv
