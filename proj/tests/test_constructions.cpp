#include <doctest.h>

#include "lieinv/constructions.hpp"

using namespace lieinv;

namespace {

QMatrix random_matrix(std::size_t n, std::uint64_t round, bool antisymmetric = false) {
  SampleConfig cfg{77, 5, 1};
  QVector v = sample_vector(cfg, n * n, round, 40);
  QMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = v[r * n + c];
  return antisymmetric ? m - m.transpose() : m;
}

PolyMatrix generic_poly_matrix(std::size_t n) {
  PolyMatrix m(n, std::vector<MultiPoly>(n, MultiPoly(n * n)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m[r][c] = MultiPoly::variable(n * n, r * n + c);
  return m;
}

}  // namespace

TEST_CASE("principal minor sums") {
  for (std::uint64_t r = 0; r < 10; ++r) {
    QMatrix m = random_matrix(4, r);
    CHECK(principal_minor_sum(m, 0) == 1);
    CHECK(principal_minor_sum(m, 1) == m.trace());
    CHECK(principal_minor_sum(m, 4) == determinant(m));
    // two-by-two minors directly
    Rational s = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) s += m(i, i) * m(j, j) - m(i, j) * m(j, i);
    CHECK(principal_minor_sum(m, 2) == s);
  }
  PolyMatrix g = generic_poly_matrix(3);
  CHECK(determinant(g).size() == 6);
  for (std::uint64_t r = 0; r < 5; ++r) {
    QMatrix m = random_matrix(3, r + 20);
    QVector x;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) x.push_back(m(i, j));
    for (std::size_t k = 0; k <= 3; ++k) CHECK(principal_minor_sum(g, k).evaluate(x) == principal_minor_sum(m, k));
  }
}

TEST_CASE("pfaffians") {
  QMatrix a(2, 2);
  a(0, 1) = 3;
  a(1, 0) = -3;
  CHECK(pfaffian(a) == 3);
  // Pf of the generic 4x4 antisymmetric matrix is af - be + cd
  const std::size_t v = 6;
  PolyMatrix m(4, std::vector<MultiPoly>(4, MultiPoly(v)));
  std::size_t k = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      m[i][j] = MultiPoly::variable(v, k);
      m[j][i] = MultiPoly::variable(v, k++).scaled(-1);
    }
  auto x = [&](std::size_t i) { return MultiPoly::variable(v, i); };
  CHECK(pfaffian(m) == x(0) * x(5) - x(1) * x(4) + x(2) * x(3));
  for (std::uint64_t r = 0; r < 100; ++r) {
    std::size_t n = 2 + 2 * (r % 5);
    QMatrix b = random_matrix(n, r + 100, true);
    Rational p = pfaffian(b);
    CHECK(p * p == determinant(b));
  }
  QMatrix s(3, 3);
  CHECK_THROWS_AS(pfaffian(s), Error);
  CHECK_THROWS_AS(pfaffian(random_matrix(4, 3)), Error);
}

TEST_CASE("highest components") {
  auto x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  auto top = highest_component(x * x * y + x * y * y, {false, true});
  CHECK(top.poly == x * y * y);
  CHECK(top.degree == 2);
  CHECK_THROWS_AS(highest_component(MultiPoly(2), {true, true}), Error);

  EvaluatorPoly p;
  p.vars = 2;
  p.degree_bound = 3;
  p.eval = [](const QVector& v) -> Rational { return v[0] * v[0] * v[1] + v[0] * v[1] * v[1]; };
  auto h = highest_component(p, {false, true});
  CHECK(h.degree == 2);
  CHECK(h.poly({3, 5}) == 75);
}

TEST_CASE("centraliser layouts") {
  auto m2 = minimal_nilpotent_centraliser_layout(2);
  CHECK(m2.centraliser.dim() == m2.kernel_dim);
  CHECK(m2.centraliser.dim() == 6);
  auto m3 = minimal_nilpotent_centraliser_layout(3);
  CHECK(m3.centraliser.dim() == 15);
  CHECK(m3.centraliser.dim() == m3.kernel_dim);
  auto t11 = two_block_centraliser_layout(1, 1);
  CHECK(t11.centraliser.dim() == 6);
  auto t32 = two_block_centraliser_layout(3, 2);
  CHECK(t32.centraliser.dim() == 31);
  CHECK(t32.kernel_dim == 31);
  CHECK(t32.so_coords.size() == 3);
  CHECK(t32.sym_coords.size() == 6);
  CHECK(t32.star_coords.size() == 12);
  // the zero point is f
  CHECK(m2.layout.evaluate(QVector(m2.layout.vars(), 0)) == m2.f);
  // coordinates are dual to the basis
  for (std::size_t i = 0; i < m2.centraliser.dim(); ++i)
    for (std::size_t j = 0; j < m2.centraliser.dim(); ++j)
      CHECK((m2.centraliser.matrices()[i] * m2.layout.coords[j].transpose()).trace() == (i == j ? 1 : 0));
  auto s = centraliser_semidirect(m2);
  CHECK(s.q_dim() == 3);
  CHECK(s.v_dim() == 2);
  CHECK(!representation_violation(s.rep));
}

TEST_CASE("restricted eDelta") {
  auto m2 = minimal_nilpotent_centraliser_layout(2);
  auto e = e_delta_restricted(m2, 4);
  CHECK(e.f_degree == 1);
  CHECK(e.poly.degree() == 3);
  CHECK(is_invariant(e.target, e.poly));
  CHECK_THROWS_AS(e_delta_restricted(m2, 3), Error);
  CHECK_THROWS_AS(e_delta_restricted(m2, 6), Error);

  auto m3 = minimal_nilpotent_centraliser_layout(3);
  std::vector<int> degs;
  for (std::size_t k : {4, 6}) {
    auto d = e_delta_restricted(m3, k);
    CHECK(is_invariant(d.target, d.poly));
    degs.push_back(d.poly.degree());
  }
  CHECK(degs == std::vector<int>{3, 5});

  auto t32 = two_block_centraliser_layout(3, 2);
  auto d = e_delta_restricted(t32, 10);
  CHECK(d.i == 1);
  CHECK(d.target.v_dim() == 12);
  CHECK(is_invariant(d.target, d.poly));
}

TEST_CASE("psi restriction") {
  auto l = share(classical_algebra(Family::so, 5));
  auto s = semidirect(standard_rep(l));
  const std::size_t q = s.q_dim();
  QVector x(5, 0);
  x[0] = 1;
  x[4] = 1;
  // the quadratic form on V: psi_x gives the constant Q(x)
  auto vv = [&](std::size_t a) { return MultiPoly::variable(s.dim(), q + a); };
  auto form = (vv(0) * vv(4) + vv(1) * vv(3)).scaled(2) + vv(2) * vv(2);
  auto r = restrict_psi(s, form, x);
  CHECK(r.stabiliser.algebra.dim() == 6);
  CHECK(r.poly == MultiPoly::constant(6, 2));
  CHECK(restrict_psi(s, vv(1), x).poly.is_zero());
  // a q-coordinate escapes the stabiliser
  CHECK_THROWS_AS(restrict_psi(s, MultiPoly::variable(s.dim(), 0), x), Error);

  auto m = matryoshka_check(2, 2);
  CHECK(m.proportional);
  CHECK(m.points == 20);
  auto m1 = matryoshka_check(2, 1);
  CHECK(m1.proportional);
}

TEST_CASE("contractions") {
  auto sp = z2_contraction({ContractionKind::sp_sp, 4, 2});
  CHECK(sp.s.q_dim() == 13);
  CHECK(sp.s.v_dim() == 8);
  CHECK(sp.generators.size() == 3);
  for (const auto& g : sp.generators) CHECK(is_invariant(sp.s, g));

  auto so = z2_contraction({ContractionKind::so_so, 3, 1});
  CHECK(so.s.v_dim() == 3);
  REQUIRE(so.generators.size() == 2);
  unsigned sum = 0;
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(is_invariant(so.s, so.generators[k]));
    sum += so.degrees[k][0] + so.degrees[k][1];
  }
  CHECK(sum == 4);
  CHECK(b_of(*so.s.total).value == 4);

  auto gl = z2_contraction({ContractionKind::so_gl, 2, 0});
  CHECK(gl.s.q_dim() == 4);
  CHECK(gl.s.v_dim() == 2);
  auto sl = derived_base(gl.s);
  CHECK(sl.q_dim() == 3);
  CHECK(index(*sl.total).value == 3);

  auto slsp = z2_contraction({ContractionKind::sl_sp, 4, 0});
  CHECK(slsp.s.v_dim() == 5);
  CHECK(slsp.generators.size() == 3);
  for (const auto& g : slsp.generators) CHECK(is_invariant(slsp.s, g));
  CHECK_THROWS_AS(z2_contraction({ContractionKind::sl_sp, 3, 0}), Error);
}

TEST_CASE("takiff algebras") {
  SampleConfig cfg;
  auto a = takiff(classical_algebra(Family::sl, 2)), b = takiff(classical_algebra(Family::so, 3));
  CHECK(index(*a.total, cfg).value == index(*b.total, cfg).value);
  CHECK(generator_ledger(a, 3).generator_degrees() == generator_ledger(b, 3).generator_degrees());
  CHECK(index(*takiff(abelian(1)).total, cfg).value == 2);
}

TEST_CASE("lift through S^2") {
  auto lift = item3_lift(2);
  CHECK(lift.s.dim() == 19);
  REQUIRE(lift.lifted.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(is_invariant(lift.s, lift.lifted[i]));
    CHECK(lift.lifted[i].degree() == lift.h[i].degree() + 1);
  }
  Rational scalar;
  CHECK(item3_evaluation_identity(lift, {}, 20, &scalar));
  CHECK(sgn(scalar) != 0);
}
