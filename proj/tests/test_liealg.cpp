#include <doctest.h>

#include "lieinv/liealg.hpp"

using namespace lieinv;

namespace {

QVector e(std::size_t d, std::size_t i) {
  QVector v(d);
  v[i] = 1;
  return v;
}

}  // namespace

TEST_CASE("classical dimensions and realisations") {
  CHECK(classical_algebra(Family::sl, 2).dim() == 3);
  CHECK(classical_algebra(Family::gl, 3).dim() == 9);
  CHECK(classical_algebra(Family::so, 9).dim() == 36);
  CHECK(classical_algebra(Family::sp, 6).dim() == 21);
  CHECK_THROWS_AS(classical_algebra(Family::sp, 5), Error);

  for (auto [f, n] : {std::pair{Family::so, 5}, {Family::so, 6}, {Family::sp, 4}, {Family::sp, 6}}) {
    auto l = classical_algebra(f, n);
    QMatrix s = classical_form(f, n);
    for (const auto& x : l.matrices()) CHECK((x.transpose() * s + s * x).is_zero());
    for (std::size_t i = 0; i < l.cartan_size; ++i) {
      const QMatrix& h = l.matrices()[i];
      for (std::size_t a = 0; a < h.rows(); ++a)
        for (std::size_t b = 0; b < h.cols(); ++b)
          if (a != b) CHECK(sgn(h(a, b)) == 0);
    }
  }
}

TEST_CASE("structure constants satisfy antisymmetry and Jacobi") {
  for (auto [f, n] : {std::pair{Family::gl, 3}, {Family::sl, 4}, {Family::so, 7}, {Family::sp, 6}, {Family::so, 8}}) {
    auto l = classical_algebra(f, n);
    CHECK(is_antisymmetric(l));
    CHECK(!jacobi_violation(l));
  }
  CHECK(!jacobi_violation(heisenberg(3)));
  LieAlgebraData bad({"a", "b", "c"});
  bad.set_bracket(0, 1, {{0, Rational(1)}});
  bad.set_bracket(1, 2, {{1, Rational(1)}});
  bad.set_bracket(0, 2, {{2, Rational(1)}});
  CHECK(jacobi_violation(bad).has_value());
}

TEST_CASE("index of reductive algebras equals rank") {
  SampleConfig cfg;
  CHECK(index(classical_algebra(Family::sl, 2), cfg).value == 1);
  CHECK(index(abelian(5), cfg).value == 5);
  CHECK(index(classical_algebra(Family::gl, 3), cfg).value == 3);
  for (std::size_t n = 2; n <= 20; ++n) {
    auto r = index(classical_algebra(Family::sl, n), cfg);
    CHECK(r.stabilised);
    CHECK(r.value == n - 1);
  }
  for (std::size_t n = 3; n <= 20; ++n) CHECK(index(classical_algebra(Family::so, n), cfg).value == n / 2);
  for (std::size_t n = 2; n <= 20; n += 2) CHECK(index(classical_algebra(Family::sp, n), cfg).value == n / 2);
}

TEST_CASE("b and fingerprints") {
  auto sl2 = classical_algebra(Family::sl, 2);
  CHECK(b_of(sl2).value == 2);
  auto f = fingerprint(sl2);
  CHECK(f.dim == 3);
  CHECK(f.index == 1);
  CHECK(f.derived_series == std::vector<std::size_t>{3, 3});
  CHECK(f.killing_rank == 3);
  CHECK(f.center_dim == 0);

  auto h = fingerprint(heisenberg(1));
  CHECK(h.index == 1);
  CHECK(h.derived_series == std::vector<std::size_t>{3, 1, 0});
  CHECK(h.killing_rank == 0);
  CHECK(h.center_dim == 1);

  CHECK(fingerprint(classical_algebra(Family::so, 3)) == f);
  CHECK(fingerprint(classical_algebra(Family::sp, 2)) == f);
  // so4 = sl2 + sl2, sp4 = so5
  CHECK(fingerprint(classical_algebra(Family::so, 4)) == fingerprint(direct_sum(sl2, sl2)));
  CHECK(fingerprint(classical_algebra(Family::so, 5)) == fingerprint(classical_algebra(Family::sp, 4)));
  CHECK(fingerprint(classical_algebra(Family::gl, 2)) == fingerprint(direct_sum(sl2, abelian(1))));
  for (auto [fam, n] : {std::pair{Family::sl, 4}, {Family::so, 7}, {Family::sp, 6}})
    CHECK(killing_rank(classical_algebra(fam, n)) == classical_algebra(fam, n).dim());
}

TEST_CASE("subalgebras") {
  auto sl2 = classical_algebra(Family::sl, 2);  // H, E12, E21
  std::vector<QVector> all{e(3, 0), e(3, 1), e(3, 2)};
  CHECK(fingerprint(subalgebra(sl2, all)) == fingerprint(sl2));
  auto cartan = subalgebra(sl2, {e(3, 0)});
  CHECK(cartan.dim() == 1);
  CHECK(index(cartan).value == 1);
  auto nil = subalgebra(sl2, {e(3, 1), e(3, 1)});
  CHECK(nil.dim() == 1);
  CHECK(nil.has_matrices());
  CHECK_THROWS_AS(subalgebra(sl2, {e(3, 1), e(3, 2)}), NotClosed);
  try {
    subalgebra(sl2, {e(3, 1), e(3, 2)});
  } catch (const NotClosed& nc) {
    CHECK(nc.first == 0);
    CHECK(nc.second == 1);
  }
  auto borel = subalgebra(sl2, {e(3, 0), e(3, 1)});
  CHECK(index(borel).value == 0);
  CHECK(derived_series_dims(borel) == std::vector<std::size_t>{2, 1, 0});
}

TEST_CASE("index parity") {
  SampleConfig cfg;
  for (auto [fam, n] : {std::pair{Family::gl, 4}, {Family::sl, 5}, {Family::so, 6}, {Family::sp, 8}}) {
    auto l = classical_algebra(fam, n);
    CHECK((l.dim() - index(l, cfg).value) % 2 == 0);
  }
}
