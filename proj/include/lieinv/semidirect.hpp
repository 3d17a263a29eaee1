// Semi-direct products q x| V, stabilisers and index formulas.
#pragma once

#include <string>
#include <vector>

#include "lieinv/repn.hpp"

namespace lieinv {

/// s = q x| V with V an abelian ideal. The basis of `total` is the basis of
/// q followed by the basis of V. Every coordinate belongs to one grading
/// block: block 0 is q, block b >= 1 is the b-th summand of V.
struct SemiDirectProduct {
  AlgebraPtr base;
  RepresentationData rep;
  AlgebraPtr total;
  std::vector<std::size_t> block_of;     // per coordinate of s
  std::vector<std::string> block_names;  // "q", then the V summand labels

  std::size_t q_dim() const { return base->dim(); }
  std::size_t v_dim() const { return rep.dim; }
  std::size_t dim() const { return total->dim(); }
  std::size_t blocks() const { return block_names.size(); }
};

/// Builds q x| V. With `split_blocks` false the whole of V is one block.
SemiDirectProduct semidirect(const RepresentationData& rep, bool split_blocks = true);

struct StabiliserResult {
  QVector point;
  LieAlgebraData algebra;
  std::vector<QVector> basis;  // the stabiliser inside the ambient algebra
  std::size_t dim_orbit = 0;
};

/// q_x for x in V*: the kernel of xi -> xi.x = -x o A_xi.
StabiliserResult stabiliser_in_V(const SemiDirectProduct& s, const QVector& x);

/// Rank of xi -> xi.x, i.e. the orbit dimension dim Q.x.
std::size_t orbit_dim_V(const SemiDirectProduct& s, const QVector& x);

/// A sampled generic point of V*: one whose orbit dimension is maximal over
/// the sample set.
struct GenericPoint {
  QVector point;
  std::size_t orbit_dim = 0;
  bool stabilised = false;
};
GenericPoint generic_point_V(const SemiDirectProduct& s, const SampleConfig& cfg);

struct RaisResult {
  std::size_t value = 0;
  bool stabilised = false;
  std::size_t stabiliser_dim = 0;
  std::size_t stabiliser_index = 0;
  QVector point;
};

/// ind s = dim V - (dim q - dim q_x) + ind q_x at a sampled generic x in V*.
RaisResult rais_index(const SemiDirectProduct& s, const SampleConfig& cfg = {});

/// s_xi for xi in s*: the kernel of the Kirillov form B_xi.
StabiliserResult stabiliser_full(const SemiDirectProduct& s, const QVector& xi);

/// The right-hand side of dim s_{gamma+y} = dim (q_y)_{gamma|q_y} + dim V - dim Q.y
/// for gamma in q*, y in V*.
std::size_t split_stabiliser_formula(const SemiDirectProduct& s, const QVector& gamma, const QVector& y);

/// Heuristic codim-2 test for a Lie algebra: the singular set of l* is
/// intersected with a random affine line; a common factor of two random
/// compressions det(P B_{gamma(t)} P^T) signals a divisor in the singular set.
struct Codim2Line {
  bool holds = false;
  std::size_t generic_rank = 0;
  UPoly gcd;
};
Codim2Line codim2_line_test(const LieAlgebraData& l, const SampleConfig& cfg);

struct DivisorVerdict {
  QVector point;
  std::size_t lhs = 0;  // ind q_y + dim V - dim Q.y
  std::size_t rhs = 0;  // ind s
  bool holds = false;
};

struct Codim2Evidence {
  bool partial = true;             // no usable divisor points supplied
  bool criterion_i = false;        // q_x has the codim-2 property (line test)
  std::size_t index_s = 0;
  std::vector<DivisorVerdict> divisors;
  bool all_hold() const;
  std::string summary() const;
};

/// Evidence for the codim-2 property of s: criterion (i) at a sampled generic
/// x, criterion (ii) at each supplied point of V* (zero vectors are skipped).
Codim2Evidence codim2_evidence(const SemiDirectProduct& s, const std::vector<QVector>& divisor_points,
                               const SampleConfig& cfg = {});

}  // namespace lieinv
