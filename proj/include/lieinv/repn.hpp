// Explicit rational representations of Lie algebras.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lieinv/liealg.hpp"

namespace lieinv {

using AlgebraPtr = std::shared_ptr<const LieAlgebraData>;

inline AlgebraPtr share(LieAlgebraData l) { return std::make_shared<const LieAlgebraData>(std::move(l)); }

/// A labelled range of coordinates inside a module (one direct summand).
struct ModuleBlock {
  std::size_t offset = 0;
  std::size_t dim = 0;
  std::string label;
};

/// Action matrices of the basis of `algebra` on k^dim.
struct RepresentationData {
  AlgebraPtr algebra;
  std::size_t dim = 0;
  std::vector<SparseQMatrix> action;
  std::string label;
  std::vector<ModuleBlock> blocks;  // direct summands, in coordinate order

  /// The action of an arbitrary algebra element (coordinates in the basis).
  SparseQMatrix act(const QVector& x) const;
};

/// First basis pair (i, j) with [A_i, A_j] != A_[x_i, x_j], if any.
std::optional<std::pair<std::size_t, std::size_t>> representation_violation(const RepresentationData& r);

RepresentationData standard_rep(AlgebraPtr l);
RepresentationData trivial_rep(AlgebraPtr l, std::size_t d);
RepresentationData adjoint_rep(AlgebraPtr l);
/// Action by negated transposes on the dual basis.
RepresentationData dual_rep(const RepresentationData& r);
RepresentationData direct_sum(const RepresentationData& a, const RepresentationData& b);
RepresentationData direct_sum(const std::vector<RepresentationData>& parts);
RepresentationData tensor_product(const RepresentationData& a, const RepresentationData& b);

/// Basis e_{i_1} ^ ... ^ e_{i_k}, i_1 < ... < i_k, in lexicographic order.
RepresentationData exterior_power(const RepresentationData& r, std::size_t k);
/// Basis of monomials e_{i_1} ... e_{i_k}, i_1 <= ... <= i_k, lexicographic.
RepresentationData symmetric_power(const RepresentationData& r, std::size_t k);

/// The restriction of r to the invariant subspace spanned by `basis`.
/// Throws Error if the subspace is not invariant.
RepresentationData restrict_to_submodule(const RepresentationData& r, const std::vector<QVector>& basis,
                                         std::string label);

/// Linear maps f with f A_i = B_i f for all i, as a basis of Hom_g(a, b).
std::vector<QMatrix> intertwiners(const RepresentationData& a, const RepresentationData& b);

/// Bilinear forms F (as matrices, F(u, v) = u^T F v) with A_i^T F + F A_i = 0.
std::vector<QMatrix> invariant_forms(const RepresentationData& r, bool symmetric);

class FormNotInvariant : public Error {
 public:
  explicit FormNotInvariant(std::size_t basis_index)
      : Error("form is not invariant under basis element " + std::to_string(basis_index)), witness(basis_index) {}
  std::size_t witness;
};

/// The kernel of the contraction Lambda^k R -> Lambda^{k-2} R by the invariant
/// form `form`, i.e. the primitive part of Lambda^k. Throws FormNotInvariant.
RepresentationData contraction_kernel(const RepresentationData& base, std::size_t k, const QMatrix& form);

enum class Chirality { even, odd };

/// Spin representation of so_n realised on the exterior algebra of a maximal
/// isotropic subspace (n >= 3). For even n a chirality selects the even or
/// odd half-spin module; for odd n chirality must be absent.
RepresentationData spin_rep(AlgebraPtr so_n, std::optional<Chirality> half = std::nullopt);
RepresentationData spin_rep(std::size_t n, std::optional<Chirality> half = std::nullopt);

/// A module written as a sum of labelled irreducibles with multiplicities,
/// e.g. "2phi1+phi4" (the Greek letter is accepted as well).
struct ModuleSpec {
  std::vector<std::pair<std::string, std::size_t>> summands;
  static ModuleSpec parse(const std::string& text);
  std::string to_string() const;
};

/// Weight label -> constructor name: "std", "trivial", "adjoint", "spin",
/// "halfspin_even", "halfspin_odd", "wedge2_0", "wedge3_0".
using WeightDictionary = std::map<std::string, std::string>;

RepresentationData build_constructor(AlgebraPtr l, const std::string& constructor);
RepresentationData build_module(AlgebraPtr l, const ModuleSpec& spec, const WeightDictionary& dictionary);

}  // namespace lieinv
