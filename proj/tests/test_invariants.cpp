#include <doctest.h>

#include "lieinv/invariants.hpp"

using namespace lieinv;

namespace {

SemiDirectProduct std_product(Family f, std::size_t n, std::size_t copies = 1) {
  auto l = share(classical_algebra(f, n));
  std::vector<RepresentationData> parts(copies, standard_rep(l));
  return semidirect(direct_sum(parts));
}

SemiDirectProduct alone(Family f, std::size_t n) { return semidirect(trivial_rep(share(classical_algebra(f, n)), 0)); }

SemiDirectProduct takiff_sl2() { return semidirect(adjoint_rep(share(classical_algebra(Family::sl, 2)))); }

MultiPoly random_poly(std::size_t vars, unsigned deg, std::uint64_t round) {
  SampleConfig cfg{round, 3, 1};
  MultiPoly p(vars);
  auto coeffs = sample_vector(cfg, 6, round, 30);
  auto mons = monomials_of_degree(vars, deg);
  for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term(mons[(k * 7 + round) % mons.size()], coeffs[k]);
  return p;
}

}  // namespace

TEST_CASE("multipoly arithmetic") {
  auto x = MultiPoly::variable(3, 0), y = MultiPoly::variable(3, 1), z = MultiPoly::variable(3, 2);
  auto p = (x + y) * (x - y);
  CHECK(p == x * x - y * y);
  CHECK(p.degree() == 2);
  CHECK((p - p).is_zero());
  CHECK(p.partial(0) == x.scaled(2));
  CHECK(p.evaluate({3, 1, 7}) == 8);
  CHECK((x + z).pow(3).size() == 4);
  CHECK(monomials_of_degree(3, 2).size() == 6);
  CHECK(monomials_of_degree(3, 2).front() == Monomial{2, 0, 0});
  // x -> y + z, y -> y, z -> 0
  auto q = p.substitute_linear({{{1, 1}, {2, 1}}, {{1, 1}}, {}}, 3);
  CHECK(q == z * z + (y * z).scaled(2));
  auto md = (x * z).multidegree({0, 0, 1}, 2);
  REQUIRE(md);
  CHECK(*md == std::vector<unsigned>{1, 1});
  CHECK(!(x + z).multidegree({0, 0, 1}, 2));
  CHECK(p.to_string({"a", "b", "c"}) == "a^2 - b^2");
}

TEST_CASE("lie derivative") {
  auto sl2 = alone(Family::sl, 2);  // h, e, f
  std::size_t n = 3;
  CHECK(lie_derivative(sl2, 1, MultiPoly::constant(n, 5)).is_zero());
  auto h = MultiPoly::variable(n, 0), e = MultiPoly::variable(n, 1), f = MultiPoly::variable(n, 2);
  auto casimir = e * f + (h * h).scaled(Rational(1, 4));
  for (std::size_t i = 0; i < 3; ++i) CHECK(lie_derivative(sl2, i, casimir).is_zero());
  // [h, e] = 2e with H = E11 - E22
  CHECK(lie_derivative(sl2, 0, e) == e.scaled(2));
  auto t = takiff_sl2();
  for (std::uint64_t r = 0; r < 5; ++r) {
    auto p = random_poly(6, 2, r), q = random_poly(6, 3, r + 100);
    for (std::size_t i = 0; i < 6; ++i)
      CHECK(lie_derivative(t, i, p * q) == lie_derivative(t, i, p) * q + p * lie_derivative(t, i, q));
  }
}

TEST_CASE("generating sets") {
  auto sl4 = classical_algebra(Family::sl, 4);
  auto g = generating_set(sl4);
  CHECK(g.diagonal.size() == 3);
  auto s = std_product(Family::sp, 4);
  auto gs = generating_set(*s.total);
  CHECK(gs.diagonal.size() == 2);
  CHECK(gs.others.size() < s.dim() - 2);
}

TEST_CASE("invariant spaces") {
  auto sp2 = std_product(Family::sp, 2);
  CHECK(component_size(sp2, {1, 2}) == 9);
  auto inv = invariant_space(sp2, {1, 2});
  CHECK(inv.size() == 1);
  CHECK(inv[0].multidegree(sp2.block_of, 2) == std::optional<std::vector<unsigned>>({1, 2}));
  for (MultiDegree d : {MultiDegree{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}) CHECK(invariant_space(sp2, d).empty());
  CHECK(invariant_space(std_product(Family::so, 5), {0, 1}).empty());
  CHECK(invariant_space(std_product(Family::so, 5), {0, 2}).size() == 1);
  InvariantOptions tiny;
  tiny.monomial_cap = 5;
  CHECK_THROWS_AS(invariant_space(sp2, {1, 2}, tiny), ComponentTooLarge);
  // normalisation: leading coefficient 1
  CHECK(inv[0].terms().rbegin()->second == 1);
  InvariantOptions rev;
  rev.reverse_order = true;
  auto inv2 = invariant_space(sp2, {1, 2}, rev);
  REQUIRE(inv2.size() == 1);
  CHECK(inv2[0].scaled(inv[0].terms().rbegin()->second / inv2[0].coefficient(inv[0].terms().rbegin()->first)) ==
        inv[0]);
}

TEST_CASE("generator ledgers") {
  auto sp2 = std_product(Family::sp, 2);
  auto l1 = generator_ledger(sp2, 4);
  CHECK(l1.complete());
  CHECK(l1.generator_degrees() == std::vector<unsigned>{3});

  auto t = takiff_sl2();
  auto l2 = generator_ledger(t, 3);
  CHECK(l2.generator_degrees() == std::vector<unsigned>{2, 2});

  auto s = std_product(Family::sp, 4);
  auto l3 = generator_ledger(s, 5);
  CHECK(l3.generator_degrees() == std::vector<unsigned>{3, 5});

  InvariantOptions rev;
  rev.reverse_order = true;
  auto l3r = generator_ledger(s, 5, rev);
  REQUIRE(l3r.entries.size() == l3.entries.size());
  for (std::size_t k = 0; k < l3.entries.size(); ++k) {
    CHECK(l3r.entries[k].invariant_dim == l3.entries[k].invariant_dim);
    CHECK(l3r.entries[k].new_generators == l3.entries[k].new_generators);
  }

  CHECK(generator_ledger(alone(Family::sl, 2), 3).generator_degrees() == std::vector<unsigned>{2});
  CHECK(generator_ledger(alone(Family::sp, 4), 4).generator_degrees() == std::vector<unsigned>{2, 4});
  CHECK(generator_ledger(alone(Family::so, 5), 4).generator_degrees() == std::vector<unsigned>{2, 4});
  CHECK(generator_ledger(alone(Family::sl, 3), 3).generator_degrees() == std::vector<unsigned>{2, 3});

  InvariantOptions tiny;
  tiny.monomial_cap = 8;
  auto lt = generator_ledger(t, 3, tiny);
  CHECK(!lt.complete());
}

TEST_CASE("jacobian and freeness") {
  SampleConfig cfg;
  auto t = takiff_sl2();
  auto gens = generator_ledger(t, 3).generators();
  CHECK(jacobian_independent(gens, t, cfg));
  CHECK(!jacobian_independent({gens[0], gens[0] * gens[0]}, t, cfg));
  CHECK(jacobian_independent({MultiPoly::variable(6, 0), MultiPoly::variable(6, 1)}, t, cfg));

  auto v = freeness_checklist(t, gens, cfg, codim2_evidence(t, {sample_vector(cfg, 3, 0, 5)}, cfg));
  CHECK(v.passed());
  CHECK(v.degree_sum == 4);
  CHECK(v.b == 4);

  auto sp2 = std_product(Family::sp, 2);
  auto v2 = freeness_checklist(sp2, generator_ledger(sp2, 4).generators(), cfg, codim2_evidence(sp2, {}, cfg));
  CHECK(v2.passed());
  CHECK(v2.degree_sum == 3);
  CHECK(v2.b == 3);

  auto s = std_product(Family::sp, 4);
  auto v3 = freeness_checklist(s, generator_ledger(s, 5).generators(), cfg, codim2_evidence(s, {}, cfg));
  CHECK(v3.passed());
  CHECK(v3.degree_sum == 8);
  CHECK(v3.b == 8);

  // a single generator is not enough for Takiff sl2
  auto bad = freeness_checklist(t, {gens[0]}, cfg, codim2_evidence(t, {}, cfg));
  CHECK(!bad.count_matches());
  CHECK(!bad.passed());
}
