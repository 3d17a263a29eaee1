// Lie algebras as rational structure-constant tables.
#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lieinv/qlinalg.hpp"

namespace lieinv {

enum class Family { gl, sl, so, sp };

std::string to_string(Family f);
Family parse_family(const std::string& s);

/// A finite-dimensional Lie algebra with a fixed basis x_0..x_{d-1}.
///
/// `bracket(i, j)` holds the coordinates of [x_i, x_j]. Algebras built from
/// matrices keep the realisation (one N x N matrix per basis element), which
/// the standard representation and the matrix constructions rely on.
class LieAlgebraData {
 public:
  LieAlgebraData() = default;
  explicit LieAlgebraData(std::vector<std::string> labels);

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  const SparseVector& bracket(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  /// Sets [x_i, x_j] = v and [x_j, x_i] = -v.
  void set_bracket(std::size_t i, std::size_t j, const SparseVector& v);

  SparseVector bracket(const SparseVector& u, const SparseVector& v) const;
  QVector bracket(const QVector& u, const QVector& v) const;

  /// ad(x_i) as a dim x dim matrix, column j = [x_i, x_j].
  SparseQMatrix ad(std::size_t i) const;

  bool has_matrices() const { return !matrices_.empty(); }
  const std::vector<QMatrix>& matrices() const { return matrices_; }
  std::size_t matrix_size() const { return matrices_.empty() ? 0 : matrices_.front().rows(); }
  void set_matrices(std::vector<QMatrix> m) { matrices_ = std::move(m); }

  /// Family and matrix size when built by classical_algebra.
  std::optional<std::pair<Family, std::size_t>> classical;

  /// Number of leading basis elements spanning a Cartan subalgebra of
  /// diagonal matrices (0 when unknown); the remaining matrix basis
  /// elements are weight vectors for it.
  std::size_t cartan_size = 0;

 private:
  std::vector<std::string> labels_;
  std::vector<SparseVector> table_;
  std::vector<QMatrix> matrices_;
};

class NotClosed : public Error {
 public:
  NotClosed(std::size_t i, std::size_t j)
      : Error("span is not closed under the bracket: [" + std::to_string(i) + ", " + std::to_string(j) + "]"),
        first(i),
        second(j) {}
  std::size_t first, second;
};

/// Matrix Lie algebra spanned by the given matrices, which must be linearly
/// independent and closed under the commutator.
LieAlgebraData matrix_lie_algebra(const std::vector<QMatrix>& basis, std::vector<std::string> labels);

/// gl_n, sl_n, so_n (split form, antidiagonal ones), sp_n (n = matrix size,
/// even, J = [[0, I], [-I, 0]]). Cartan elements come first.
LieAlgebraData classical_algebra(Family family, std::size_t n);

/// The invariant bilinear form preserved by so_n / sp_n: X^T S + S X = 0.
QMatrix classical_form(Family family, std::size_t n);

LieAlgebraData abelian(std::size_t d);
/// heis_n, dimension 2n+1, basis p_1..p_n, q_1..q_n, z with [p_i, q_i] = z.
LieAlgebraData heisenberg(std::size_t n);
LieAlgebraData direct_sum(const LieAlgebraData& a, const LieAlgebraData& b);
/// sp_2k x| heis_k: sp_2k acts on the span of p, q as on k^2k and [u, w] = J(u, w) z.
LieAlgebraData symplectic_heisenberg(std::size_t k);

/// First violated triple (i, j, k) of the Jacobi identity, if any.
std::optional<std::array<std::size_t, 3>> jacobi_violation(const LieAlgebraData& l);
bool is_antisymmetric(const LieAlgebraData& l);

/// The subalgebra spanned by `span` (dependent vectors are dropped), in the
/// basis of the retained vectors. Throws NotClosed with the offending pair.
LieAlgebraData subalgebra(const LieAlgebraData& l, const std::vector<QVector>& span,
                          std::vector<QVector>* retained = nullptr);

/// B_gamma(x_i, x_j) = gamma([x_i, x_j]).
QMatrix kirillov_form(const LieAlgebraData& l, const QVector& gamma);

struct IndexResult {
  std::size_t value = 0;
  bool stabilised = false;
  QVector point;  // a gamma attaining the minimum
};

IndexResult index(const LieAlgebraData& l, const SampleConfig& cfg = {});

struct BResult {
  std::size_t value = 0;
  bool stabilised = false;
};
BResult b_of(const LieAlgebraData& l, const SampleConfig& cfg = {});

std::size_t killing_rank(const LieAlgebraData& l);
std::size_t center_dim(const LieAlgebraData& l);
/// Dimensions of L, [L, L], ... until the sequence repeats or reaches 0.
std::vector<std::size_t> derived_series_dims(const LieAlgebraData& l);

struct Fingerprint {
  std::size_t dim = 0;
  std::size_t index = 0;
  std::vector<std::size_t> derived_series;
  std::size_t killing_rank = 0;
  std::size_t center_dim = 0;
  bool stabilised = true;

  bool operator==(const Fingerprint& o) const {
    return dim == o.dim && index == o.index && derived_series == o.derived_series &&
           killing_rank == o.killing_rank && center_dim == o.center_dim;
  }
  std::string to_string() const;
};

Fingerprint fingerprint(const LieAlgebraData& l, const SampleConfig& cfg = {});

}  // namespace lieinv
