// Explicit invariant constructions: principal-minor sums, Pfaffians, highest
// graded components, nilpotent centralisers of sp, Z2-contractions, Takiff
// algebras and the lift of contraction invariants through S^2(k^2n).
//
// Matrix realisations identify a dual space with matrices through the
// pairing <X, Y> = tr(X Y^T) on the span of the basis matrices, so a point
// with coordinates gamma_i = gamma(b_i) is the matrix sum_i gamma_i L_i with
// {L_i} the dual basis of {b_i}. For the trace form <X, Y> = tr(XY) one
// obtains the transposed matrices; principal-minor sums cannot tell the two
// apart.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lieinv/invariants.hpp"

namespace lieinv {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

/// Sum of the principal k-minors; equals (-1)^k times the coefficient of
/// t^(N-k) in det(t I - M).
Rational principal_minor_sum(const QMatrix& m, std::size_t k);
MultiPoly principal_minor_sum(const PolyMatrix& m, std::size_t k);
MultiPoly determinant(const PolyMatrix& m);

Rational pfaffian(const QMatrix& m);
MultiPoly pfaffian(const PolyMatrix& m);

/// Black-box polynomial in `vars` variables of total degree <= degree_bound.
struct EvaluatorPoly {
  std::function<Rational(const QVector&)> eval;
  std::size_t vars = 0;
  unsigned degree_bound = 0;
  Rational operator()(const QVector& x) const { return eval(x); }
};

/// x -> constant + sum_i x_i coords[i], N x N.
struct MatrixRealisation {
  std::size_t n = 0;
  QMatrix constant;
  std::vector<QMatrix> coords;
  std::vector<std::string> labels;

  std::size_t vars() const { return coords.size(); }
  QMatrix evaluate(const QVector& x) const;
  /// Entries as polynomials in the coordinates; with `scale_constant` an
  /// extra last variable t multiplies the constant part.
  PolyMatrix symbolic(bool scale_constant = false) const;
};

/// Dual basis of `basis` inside its span for <X, Y> = tr(X Y^T).
std::vector<QMatrix> frobenius_dual(const std::vector<QMatrix>& basis);

EvaluatorPoly delta_k(const MatrixRealisation& layout, std::size_t k);

struct HighestComponent {
  MultiPoly poly;
  unsigned degree = 0;
};
/// Top component for the grading by the degree in the variables flagged in `mask`.
HighestComponent highest_component(const MultiPoly& p, const std::vector<bool>& mask);
HighestComponent highest_component(const SemiDirectProduct& s, const MultiPoly& p, std::size_t block);

struct HighestEvaluator {
  EvaluatorPoly poly;
  unsigned degree = 0;
};
/// Scales the flagged coordinates by t, interpolates in t and keeps the top
/// coefficient; the top degree is the largest one seen at sampled points.
HighestEvaluator highest_component(const EvaluatorPoly& p, const std::vector<bool>& mask,
                                   const SampleConfig& cfg = {});

/// The centraliser g_e in sp_{2m+2n} of the nilpotent e of partition
/// (2^m, 1^2n). The symplectic form is J_2m + J_2n (block diagonal),
/// e = [[0, I_m], [0, 0]] and f = [[0, 0], [I_m, 0]] in the J_2m block.
/// Basis order: so_m (diag(A, A), A antisymmetric), S^2 k^m ([[0, C], [0, 0]]),
/// sp_2n (the classical basis in the lower right block), then the m x 2n
/// starred coordinates, copy by copy.
struct CentraliserLayout {
  std::size_t m = 0, n = 0;
  QMatrix form;
  QMatrix e, f;
  LieAlgebraData centraliser;  // realised by the basis matrices
  MatrixRealisation layout;    // f + g_e, coordinates dual to the basis
  std::vector<std::size_t> so_coords, sym_coords, sp_coords, star_coords;
  std::size_t kernel_dim = 0;  // dim of ker ad e in sp, computed directly

  std::size_t matrix_size() const { return 2 * m + 2 * n; }
};

CentraliserLayout two_block_centraliser_layout(std::size_t m, std::size_t n);
/// Minimal nilpotent of sp_2n: the case m = 1 with sp_{2n-2} in the lower block.
CentraliserLayout minimal_nilpotent_centraliser_layout(std::size_t n);

/// sp_2n x| m k^2n extracted from g_e: the quotient by S^2 k^m restricted to
/// sp_2n and the starred coordinates. Each copy of k^2n is a block.
SemiDirectProduct centraliser_semidirect(const CentraliserLayout& c);

struct EDelta {
  SemiDirectProduct target;
  MultiPoly poly;         // in the coordinates of target
  unsigned f_degree = 0;  // degree of Delta_k in f
  std::size_t k = 0;
  std::size_t i = 0;
};

/// The restriction of eDelta_k to the annihilator of S^2 k^m (for m = 1 the
/// hyperplane c = 0), expressed on sp_2n x| m k^2n. Requires m odd and
/// k = 3m + 2i - 1 with 1 <= i <= n - (m - 1)/2.
EDelta e_delta_restricted(const CentraliserLayout& c, std::size_t k, const SampleConfig& cfg = {});

struct PsiRestriction {
  StabiliserResult stabiliser;  // q_x inside q
  MultiPoly poly;               // in the coordinates of q_x
};

/// psi_x(H): substitutes gamma + x, gamma in q*, rewrites it in a basis of q
/// adapted to q_x and checks that only q_x coordinates remain and that the
/// result is q_x-invariant.
PsiRestriction restrict_psi(const SemiDirectProduct& s, const MultiPoly& h, const QVector& x);

struct Matryoshka {
  QVector point;            // x in V*
  Rational ratio;           // psi_x(H_i) / eDelta'_2i at the sampled points
  bool proportional = false;
  std::size_t points = 0;
};

/// psi_x(H_i) for s = sp_2n x| k^2n (built from the minimal nilpotent of
/// sp_{2n+2}) against eDelta'_{2i} for the minimal nilpotent of sp_2n,
/// compared by evaluation; x is the coordinate vector of V* whose
/// stabiliser is the conjugate of g'_e'.
Matryoshka matryoshka_check(std::size_t n, std::size_t i, const SampleConfig& cfg = {}, std::size_t points = 20);

enum class ContractionKind { so_so, sp_sp, sl_sp, so_gl };

/// so_{n+m} > so_n + so_m; sp_{n+m} > sp_n + sp_m (n, m even); sl_n > sp_n
/// (n even); so_2n > gl_n. Sizes are matrix sizes.
struct ContractionSpec {
  ContractionKind kind = ContractionKind::so_so;
  std::size_t n = 0, m = 0;
  std::string to_string() const;
};

struct Contraction {
  ContractionSpec spec;
  SemiDirectProduct s;              // g_0 x| g_1^ab in the ambient basis
  QMatrix form;                     // ambient form (empty for sl)
  std::vector<QMatrix> basis;       // g_0 basis then g_1 basis
  MatrixRealisation ambient;        // point of g* as a matrix
  std::vector<MultiPoly> ambient_invariants;   // modified basic invariants of g
  std::vector<std::string> sources;            // how each one was obtained
  std::vector<MultiPoly> generators;           // the highest g_1-components
  std::vector<MultiDegree> degrees;            // (g_0-degree, g_1-degree)
};

Contraction z2_contraction(const ContractionSpec& spec);

/// q' x| V with q' = [q, q].
SemiDirectProduct derived_base(const SemiDirectProduct& s);

/// l x| l^ab.
SemiDirectProduct takiff(const LieAlgebraData& l);

struct Item3Lift {
  std::size_t n = 0;
  Contraction item2;          // sl_2n > sp_2n
  SemiDirectProduct s;        // sp_2n x| (k^2n + g_1)
  std::vector<MultiPoly> phi;  // equivariant g -> S^2(k^2n), one quadratic form per basis element
  std::vector<MultiPoly> h;   // item-2 generators of g-degree 2 (item-2 coordinates)
  std::vector<MultiPoly> lifted;
};

Item3Lift item3_lift(std::size_t n);

/// H_i(A + xi + v) = h_i(A, B(xi), v) with B(xi) the trace pairing against
/// u u^T J, u = J^-1 xi, and h_i(A, B, v) the polarisation, at sampled points,
/// up to one common nonzero scalar (phi is unique up to scale), stored in `scalar`.
bool item3_evaluation_identity(const Item3Lift& lift, const SampleConfig& cfg = {}, std::size_t points = 20,
                               Rational* scalar = nullptr);

}  // namespace lieinv
