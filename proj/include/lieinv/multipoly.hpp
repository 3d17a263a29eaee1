// Sparse multivariate polynomials over Q.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lieinv/qlinalg.hpp"

namespace lieinv {

using Monomial = std::vector<std::uint8_t>;  // exponent per variable

unsigned total_degree(const Monomial& m);

/// Graded lex: by total degree, then lexicographically on exponents.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All exponent vectors over `vars` of total degree `degree`, in decreasing
/// grlex order.
std::vector<Monomial> monomials_of_degree(std::size_t vars, unsigned degree);

class MultiPoly {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t vars) : vars_(vars) {}
  static MultiPoly constant(std::size_t vars, const Rational& c);
  static MultiPoly variable(std::size_t vars, std::size_t j);

  std::size_t vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c);
  Rational coefficient(const Monomial& m) const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scaled(const Rational& s) const;
  MultiPoly& operator+=(const MultiPoly& o);
  bool operator==(const MultiPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

  MultiPoly partial(std::size_t j) const;
  Rational evaluate(const QVector& x) const;

  /// -1 for the zero polynomial.
  int degree() const;
  /// Degree per block when every monomial has the same one.
  std::optional<std::vector<unsigned>> multidegree(const std::vector<std::size_t>& block_of,
                                                   std::size_t blocks) const;
  /// Part of degree `d` in the variables flagged in `mask`.
  MultiPoly component(const std::vector<bool>& mask, unsigned d) const;

  /// x_j -> images[j], a linear form in `new_vars` variables.
  MultiPoly substitute_linear(const std::vector<SparseVector>& images, std::size_t new_vars) const;
  /// x_j -> shift[j] + images[j].
  MultiPoly substitute_affine(const std::vector<SparseVector>& images, const QVector& shift,
                              std::size_t new_vars) const;
  /// Renames x_j to x_{target[j]} in a ring of `new_vars` variables.
  MultiPoly relabel(const std::vector<std::size_t>& target, std::size_t new_vars) const;
  MultiPoly pow(unsigned e) const;

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  std::size_t vars_ = 0;
  Terms terms_;
};

}  // namespace lieinv
