// Multigraded symmetric invariants of semi-direct products.
//
// A polynomial in S(s) is written in the coordinates x_1..x_N dual to the
// basis of s* (equivalently: the basis elements of s viewed as linear
// functions on s*). The basis element xi acts by the derivation
// xi . x_j = [xi, x_j].
#pragma once

#include <string>
#include <vector>

#include "lieinv/multipoly.hpp"
#include "lieinv/semidirect.hpp"

namespace lieinv {

using MultiDegree = std::vector<unsigned>;  // q-degree, then one degree per V summand

std::string to_string(const MultiDegree& d);

MultiPoly lie_derivative(const LieAlgebraData& l, std::size_t xi, const MultiPoly& p);
MultiPoly lie_derivative(const SemiDirectProduct& s, std::size_t xi, const MultiPoly& p);

/// Annihilated by every basis derivation.
bool is_invariant(const SemiDirectProduct& s, const MultiPoly& p);

/// Basis elements acting diagonally on the basis, followed by further basis
/// elements chosen greedily until the whole algebra is generated.
struct GeneratingSet {
  std::vector<std::size_t> diagonal;
  std::vector<std::size_t> others;
};
GeneratingSet generating_set(const LieAlgebraData& l);

struct InvariantOptions {
  std::size_t monomial_cap = 5'000'000;
  bool reverse_order = false;  // reverses the monomial order used for elimination
};

class ComponentTooLarge : public Error {
 public:
  explicit ComponentTooLarge(std::size_t count)
      : Error("component too large: " + std::to_string(count) + " monomials"), count(count) {}
  std::size_t count;
};

/// Number of monomials of multidegree d.
std::size_t component_size(const SemiDirectProduct& s, const MultiDegree& d);

/// Basis of the invariants of multidegree d, in reduced echelon form with
/// respect to the grlex order (leading coefficient 1).
std::vector<MultiPoly> invariant_space(const SemiDirectProduct& s, const MultiDegree& d,
                                       const InvariantOptions& opt = {});

struct LedgerEntry {
  MultiDegree degree;
  std::size_t monomials = 0;
  std::size_t invariant_dim = 0;
  std::size_t decomposable_dim = 0;
  std::size_t new_generators = 0;
  bool too_large = false;
  bool incomplete = false;  // a lower component needed for the products was too large
  std::vector<MultiPoly> generators;
};

struct GeneratorLedger {
  unsigned cap = 0;
  std::vector<LedgerEntry> entries;  // every multidegree of total degree 1..cap
  bool complete() const;
  std::vector<MultiPoly> generators() const;
  std::vector<unsigned> generator_degrees() const;  // total degrees, sorted
  std::string to_string() const;
};

GeneratorLedger generator_ledger(const SemiDirectProduct& s, unsigned cap, const InvariantOptions& opt = {});

/// Maximal rank of the Jacobian of `polys` over sampled points.
std::size_t jacobian_rank(const std::vector<MultiPoly>& polys, std::size_t vars, const SampleConfig& cfg);
bool jacobian_independent(const std::vector<MultiPoly>& polys, const SemiDirectProduct& s,
                          const SampleConfig& cfg = {});

struct FreenessVerdict {
  bool all_invariant = false;
  bool homogeneous = false;
  bool independent = false;
  std::size_t count = 0;
  std::size_t index = 0;
  std::vector<unsigned> degrees;
  unsigned degree_sum = 0;
  std::size_t b = 0;
  Codim2Evidence codim2;
  bool count_matches() const { return count == index; }
  bool degree_sum_matches() const { return degree_sum == b; }
  bool passed() const;
  std::string to_string() const;
};

FreenessVerdict freeness_checklist(const SemiDirectProduct& s, const std::vector<MultiPoly>& candidates,
                                   const SampleConfig& cfg, const Codim2Evidence& codim2);

}  // namespace lieinv
