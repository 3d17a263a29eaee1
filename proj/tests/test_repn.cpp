#include <doctest.h>

#include "lieinv/repn.hpp"

using namespace lieinv;

namespace {

AlgebraPtr alg(Family f, std::size_t n) { return share(classical_algebra(f, n)); }

// Casimir-free oracle for the half-spin split: weights of the Cartan on the
// Fock basis are (+-1/2, ..., +-1/2).
bool has_half_weights(const RepresentationData& r, std::size_t rank) {
  for (std::size_t i = 0; i < rank; ++i) {
    QMatrix h = r.action[i].to_dense();
    for (std::size_t a = 0; a < r.dim; ++a)
      for (std::size_t b = 0; b < r.dim; ++b) {
        if (a != b && sgn(h(a, b)) != 0) return false;
        if (a == b && abs(h(a, a)) != Rational(1, 2)) return false;
      }
  }
  return true;
}

}  // namespace

TEST_CASE("standard, dual, trivial, adjoint") {
  auto sp4 = alg(Family::sp, 4);
  auto std4 = standard_rep(sp4);
  CHECK(std4.dim == 4);
  CHECK(standard_rep(alg(Family::so, 7)).dim == 7);
  CHECK(standard_rep(alg(Family::sl, 3)).dim == 3);
  CHECK_THROWS_AS(standard_rep(share(heisenberg(1))), Error);
  CHECK(!representation_violation(std4));

  auto triv = trivial_rep(sp4, 2);
  CHECK(dual_rep(triv).action == triv.action);
  CHECK(dual_rep(dual_rep(std4)).action == std4.action);
  CHECK(!representation_violation(dual_rep(std4)));

  // the defining module of sp is self-dual: J intertwines
  auto hom = intertwiners(std4, dual_rep(std4));
  REQUIRE(hom.size() == 1);
  QMatrix j = classical_form(Family::sp, 4);
  CHECK(rank(QMatrix::from_rows({[&] {
                                   QVector v;
                                   for (std::size_t a = 0; a < 4; ++a)
                                     for (std::size_t b = 0; b < 4; ++b) v.push_back(hom[0](a, b));
                                   return v;
                                 }(),
                                 [&] {
                                   QVector v;
                                   for (std::size_t a = 0; a < 4; ++a)
                                     for (std::size_t b = 0; b < 4; ++b) v.push_back(j(a, b));
                                   return v;
                                 }()},
                                16)) == 1);
  auto sl3 = alg(Family::sl, 3);
  CHECK(intertwiners(standard_rep(sl3), dual_rep(standard_rep(sl3))).empty());
  CHECK(!representation_violation(adjoint_rep(sl3)));
}

TEST_CASE("exterior and symmetric powers") {
  auto sl4 = alg(Family::sl, 4);
  auto sl6 = alg(Family::sl, 6);
  CHECK(exterior_power(standard_rep(sl4), 2).dim == 6);
  CHECK(exterior_power(standard_rep(sl6), 2).dim == 15);
  CHECK(exterior_power(standard_rep(sl6), 3).dim == 20);
  CHECK(symmetric_power(standard_rep(alg(Family::sl, 3)), 2).dim == 6);
  CHECK(!representation_violation(exterior_power(standard_rep(sl4), 2)));
  CHECK(!representation_violation(exterior_power(standard_rep(sl6), 3)));
  CHECK(!representation_violation(symmetric_power(standard_rep(sl4), 3)));

  auto sl2 = alg(Family::sl, 2);
  auto s4 = symmetric_power(standard_rep(sl2), 4);
  CHECK(s4.dim == 5);
  CHECK(!representation_violation(s4));
  // S^2 k^2 is the adjoint module of sl2
  CHECK(intertwiners(symmetric_power(standard_rep(sl2), 2), adjoint_rep(sl2)).size() == 1);
  // top exterior power of the defining module is trivial
  auto top = exterior_power(standard_rep(sl4), 4);
  for (const auto& a : top.action) CHECK(a.is_zero());
}

TEST_CASE("primitive parts under the symplectic contraction") {
  auto sp4 = alg(Family::sp, 4);
  auto sp6 = alg(Family::sp, 6);
  auto w = contraction_kernel(standard_rep(sp4), 2, classical_form(Family::sp, 4));
  CHECK(w.dim == 5);
  CHECK(!representation_violation(w));
  auto w3 = contraction_kernel(standard_rep(sp6), 3, classical_form(Family::sp, 6));
  CHECK(w3.dim == 14);
  CHECK(!representation_violation(w3));
  CHECK(contraction_kernel(standard_rep(sp6), 2, classical_form(Family::sp, 6)).dim == 14);
  // irreducible: only scalar endomorphisms
  CHECK(intertwiners(w3, w3).size() == 1);
  QMatrix bad = QMatrix::identity(4);
  CHECK_THROWS_AS(contraction_kernel(standard_rep(sp4), 2, bad), FormNotInvariant);
}

TEST_CASE("spin representations") {
  auto s7 = spin_rep(7);
  CHECK(s7.dim == 8);
  CHECK(!representation_violation(s7));
  CHECK(has_half_weights(s7, 3));
  // Spin7 preserves a symmetric form on the 8-dim module
  CHECK(invariant_forms(s7, true).size() == 1);

  auto s9 = spin_rep(9);
  CHECK(s9.dim == 16);
  CHECK(!representation_violation(s9));
  CHECK(spin_rep(13).dim == 64);

  auto so10 = share(classical_algebra(Family::so, 10));
  auto plus = spin_rep(so10, Chirality::even), minus = spin_rep(so10, Chirality::odd);
  CHECK(plus.dim == 16);
  CHECK(minus.dim == 16);
  CHECK(!representation_violation(plus));
  CHECK(!representation_violation(minus));
  // the half-spins of D5 are dual to each other and not self-dual
  CHECK(intertwiners(plus, dual_rep(minus)).size() == 1);
  CHECK(intertwiners(plus, dual_rep(plus)).empty());
  CHECK(intertwiners(plus, minus).empty());

  CHECK_THROWS_AS(spin_rep(7, Chirality::even), Error);
  CHECK(spin_rep(8, Chirality::even).dim == 8);
}

TEST_CASE("spin representation of so14, half-spin 64") {
  auto so14 = share(classical_algebra(Family::so, 14));
  auto h = spin_rep(so14, Chirality::even);
  CHECK(h.dim == 64);
  CHECK(!representation_violation(h));
}

TEST_CASE("module specs") {
  auto spec = ModuleSpec::parse("2\xcf\x86" "1+\xcf\x86" "4");
  REQUIRE(spec.summands.size() == 2);
  CHECK(spec.summands[0] == std::pair<std::string, std::size_t>{"phi1", 2});
  CHECK(spec.summands[1] == std::pair<std::string, std::size_t>{"phi4", 1});
  CHECK(spec.to_string() == "2phi1+phi4");
  CHECK(ModuleSpec::parse("0phi1+phi5").to_string() == "phi5");
  CHECK_THROWS_AS(ModuleSpec::parse("2phi1++phi4"), Error);

  WeightDictionary b4{{"phi1", "std"}, {"phi4", "spin"}};
  auto so9 = share(classical_algebra(Family::so, 9));
  auto v = build_module(so9, ModuleSpec::parse("2phi1+phi4"), b4);
  CHECK(v.dim == 34);
  CHECK(v.blocks.size() == 3);
  CHECK(!representation_violation(v));

  WeightDictionary d5{{"phi1", "std"}, {"phi4", "halfspin_even"}, {"phi5", "halfspin_odd"}};
  CHECK(build_module(share(classical_algebra(Family::so, 10)), ModuleSpec::parse("phi1+phi4"), d5).dim == 26);

  WeightDictionary c3{{"phi1", "std"}, {"phi2", "wedge2_0"}, {"phi3", "wedge3_0"}};
  auto sp6 = share(classical_algebra(Family::sp, 6));
  CHECK(build_module(sp6, ModuleSpec::parse("phi1+phi2"), c3).dim == 20);
  CHECK_THROWS_AS(build_module(sp6, ModuleSpec::parse("phi7"), c3), Error);
}
