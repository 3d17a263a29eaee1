#include <doctest.h>

#include "lieinv/semidirect.hpp"

using namespace lieinv;

namespace {

SemiDirectProduct std_product(Family f, std::size_t n, std::size_t copies = 1) {
  auto l = share(classical_algebra(f, n));
  std::vector<RepresentationData> parts(copies, standard_rep(l));
  return semidirect(direct_sum(parts));
}

SemiDirectProduct takiff_sl2() { return semidirect(adjoint_rep(share(classical_algebra(Family::sl, 2)))); }

QVector concat(const QVector& a, const QVector& b) {
  QVector c = a;
  c.insert(c.end(), b.begin(), b.end());
  return c;
}

}  // namespace

TEST_CASE("semidirect structure") {
  auto t = takiff_sl2();
  CHECK(t.dim() == 6);
  CHECK(!jacobi_violation(*t.total));
  auto s = std_product(Family::sp, 4);
  CHECK(s.dim() == 14);
  CHECK(!jacobi_violation(*s.total));
  auto so5 = std_product(Family::so, 5, 2);
  CHECK(so5.dim() == 20);
  CHECK(so5.blocks() == 3);
  // [V, V] = 0 and [x, v] = A_x v
  for (std::size_t a = s.q_dim(); a < s.dim(); ++a)
    for (std::size_t b = s.q_dim(); b < s.dim(); ++b) CHECK(s.total->bracket(a, b).empty());
  for (std::size_t i = 0; i < s.q_dim(); ++i)
    for (std::size_t a = 0; a < s.v_dim(); ++a)
      for (std::size_t b = 0; b < s.v_dim(); ++b) {
        Rational coeff = 0;
        for (const auto& [k, c] : s.total->bracket(i, s.q_dim() + a))
          if (k == s.q_dim() + b) coeff = c;
        CHECK(coeff == s.rep.action[i].get(b, a));
      }
}

TEST_CASE("stabilisers in V*") {
  auto s = std_product(Family::so, 5);
  auto zero = stabiliser_in_V(s, QVector(5));
  CHECK(zero.algebra.dim() == 10);
  CHECK(zero.dim_orbit == 0);
  auto gp = generic_point_V(s, {});
  auto st = stabiliser_in_V(s, gp.point);
  CHECK(st.algebra.dim() == 6);
  CHECK(st.dim_orbit + st.algebra.dim() == 10);
  CHECK(fingerprint(st.algebra) == fingerprint(classical_algebra(Family::so, 4)));

  auto sp = std_product(Family::sp, 4);
  auto g2 = generic_point_V(sp, {});
  auto st2 = stabiliser_in_V(sp, g2.point);
  CHECK(st2.algebra.dim() == 6);
  CHECK(!jacobi_violation(symplectic_heisenberg(1)));
  CHECK(fingerprint(st2.algebra) == fingerprint(symplectic_heisenberg(1)));
}

TEST_CASE("Rais formula against the direct index") {
  SampleConfig cfg;
  CHECK(rais_index(std_product(Family::so, 5), cfg).value == 3);
  CHECK(index(*std_product(Family::so, 5).total, cfg).value == 3);
  CHECK(rais_index(std_product(Family::sp, 4), cfg).value == 2);
  CHECK(index(*std_product(Family::sp, 4).total, cfg).value == 2);
  auto sl3 = share(classical_algebra(Family::sl, 3));
  auto none = semidirect(trivial_rep(sl3, 0));
  CHECK(rais_index(none, cfg).value == 2);
  auto sp2 = std_product(Family::sp, 2);
  CHECK(index(*sp2.total, cfg).value == 1);
  CHECK(b_of(*sp2.total, cfg).value == 3);
  auto t = takiff_sl2();
  CHECK(index(*t.total, cfg).value == 2);
  CHECK(rais_index(t, cfg).value == 2);
  CHECK(b_of(*t.total, cfg).value == 4);
  for (auto [f, n, m] : {std::tuple{Family::sl, 3, 1}, {Family::sl, 3, 2}, {Family::so, 6, 2}, {Family::sp, 6, 3},
                         {Family::gl, 3, 1}}) {
    auto s = std_product(f, n, m);
    CHECK(index(*s.total, cfg).value == rais_index(s, cfg).value);
  }
}

TEST_CASE("full stabilisers and the split formula") {
  SampleConfig cfg;
  auto sp2 = std_product(Family::sp, 2);
  CHECK(stabiliser_full(sp2, QVector(5)).algebra.dim() == 5);
  CHECK(stabiliser_full(sp2, sample_vector(cfg, 5, 0, 3)).algebra.dim() == 1);
  for (auto* s : {new SemiDirectProduct(std_product(Family::sp, 4)), new SemiDirectProduct(std_product(Family::so, 5)),
                  new SemiDirectProduct(takiff_sl2())}) {
    for (std::uint64_t r = 0; r < 20; ++r) {
      SampleConfig small{r, 2, 1};
      QVector gamma = sample_vector(small, s->q_dim(), r, 11);
      QVector y = sample_vector(small, s->v_dim(), r, 12);
      if (r % 4 == 0) y.assign(y.size(), 0);
      if (r % 4 == 1) std::fill(y.begin() + 1, y.end(), 0);
      std::size_t direct = stabiliser_full(*s, concat(gamma, y)).algebra.dim();
      CHECK(direct == split_stabiliser_formula(*s, gamma, y));
    }
    delete s;
  }
}

TEST_CASE("codim-2 evidence") {
  SampleConfig cfg;
  auto sp2 = std_product(Family::sp, 2);
  auto ev = codim2_evidence(sp2, {QVector(2)}, cfg);
  CHECK(ev.partial);
  CHECK(ev.criterion_i);

  auto so5 = std_product(Family::so, 5);
  QVector y(5);
  y[0] = 1;  // isotropic for the antidiagonal form
  auto ev2 = codim2_evidence(so5, {y}, cfg);
  CHECK(!ev2.partial);
  REQUIRE(ev2.divisors.size() == 1);
  CHECK(ev2.divisors[0].lhs == 3);
  CHECK(ev2.divisors[0].holds);
  CHECK(ev2.all_hold());

  auto t = takiff_sl2();
  auto ev3 = codim2_evidence(t, {sample_vector(cfg, 3, 0, 5)}, cfg);
  CHECK(ev3.all_hold());

  // the Borel subalgebra of sl2 fails the codim-2 property: its singular set
  // is the line {gamma(e) = 0}
  auto sl2 = classical_algebra(Family::sl, 2);
  QVector h(3), e(3);
  h[0] = 1;
  e[1] = 1;
  CHECK(!codim2_line_test(subalgebra(sl2, {h, e}), cfg).holds);
  CHECK(codim2_line_test(sl2, cfg).holds);
}
