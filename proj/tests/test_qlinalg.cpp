#include <doctest.h>

#include <random>

#include "lieinv/qlinalg.hpp"

using namespace lieinv;

namespace {

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

QMatrix random_matrix(std::mt19937_64& g, std::size_t r, std::size_t c, int h, double density = 1.0) {
  std::uniform_int_distribution<int> d(-h, h);
  std::uniform_real_distribution<double> u(0, 1);
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (u(g) < density) m(i, j) = q(d(g), 1 + ((d(g) & 3) ? 0 : 2));
  return m;
}

// low-rank product of random factors, rank <= k
QMatrix low_rank(std::mt19937_64& g, std::size_t r, std::size_t c, std::size_t k) {
  return random_matrix(g, r, k, 4) * random_matrix(g, k, c, 4);
}

}  // namespace

TEST_CASE("rank of small matrices") {
  CHECK(rank(QMatrix::identity(3)) == 3);
  CHECK(rank(QMatrix(4, 2)) == 0);
  QMatrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 2;
  m(1, 1) = 4;
  CHECK(rank(m) == 1);
}

TEST_CASE("parallel rank agrees with the serial reference") {
  std::mt19937_64 g(7);
  for (int t = 0; t < 40; ++t) {
    std::size_t r = 1 + g() % 12, c = 1 + g() % 12, k = g() % 8;
    QMatrix m = (t % 2) ? low_rank(g, r, c, k) : random_matrix(g, r, c, 3, 0.4);
    CHECK(rank(m) == rank_serial(m));
    std::vector<std::size_t> piv;
    rref(m, &piv);
    CHECK(rank(m) == piv.size());
  }
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(QMatrix::identity(2)).empty());
  CHECK(kernel_basis(QMatrix(2, 3)).size() == 3);
  QMatrix row(1, 3);
  row(0, 0) = 1;
  row(0, 1) = 1;
  auto k = kernel_basis(row);
  REQUIRE(k.size() == 2);
  for (const auto& v : k) CHECK(row * v == QVector(1));
  CHECK(rank(QMatrix::from_rows(k, 3)) == 2);

  std::mt19937_64 g(11);
  for (int t = 0; t < 30; ++t) {
    QMatrix m = low_rank(g, 1 + g() % 9, 1 + g() % 9, g() % 6);
    auto ker = kernel_basis(m);
    CHECK(rank(m) + ker.size() == m.cols());
    for (const auto& v : ker) CHECK(m * v == QVector(m.rows()));
  }
}

TEST_CASE("sparse echelon kernel matches dense kernel dimension") {
  std::mt19937_64 g(13);
  for (int t = 0; t < 30; ++t) {
    QMatrix m = low_rank(g, 1 + g() % 10, 1 + g() % 10, g() % 7);
    SparseEchelon e(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) e.add_row(to_sparse(m.row(i)));
    auto ker = e.kernel();
    CHECK(e.rank() == rank(m));
    CHECK(ker.size() == kernel_basis(m).size());
    for (const auto& v : ker) CHECK(m * v == QVector(m.rows()));
  }
}

TEST_CASE("solve, inverse, determinant, characteristic polynomial") {
  std::mt19937_64 g(17);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 1 + g() % 6;
    QMatrix a = random_matrix(g, n, n, 5);
    Rational d = determinant(a);
    auto inv = inverse(a);
    CHECK(inv.has_value() == (sgn(d) != 0));
    if (inv) CHECK(a * *inv == QMatrix::identity(n));
    auto cp = characteristic_polynomial(a);
    CHECK(cp[0] == 1);
    CHECK(cp[1] == -a.trace());
    CHECK(cp[n] == ((n % 2) ? -d : d));
    QVector b(n);
    for (auto& x : b) x = static_cast<long>(g() % 7);
    if (inv) CHECK(a * *solve(a, b) == b);
  }
}

TEST_CASE("span coordinates") {
  std::vector<QVector> basis = {{1, 0, 2}, {0, 1, 1}};
  SpanCoordinates sc(basis, 3);
  auto c = sc.coordinates(QVector{3, -1, 5});
  REQUIRE(c);
  CHECK(*c == QVector{3, -1});
  CHECK(!sc.coordinates(QVector{0, 0, 1}));
  CHECK_THROWS_AS(SpanCoordinates({{1, 1}, {2, 2}}, 2), Error);
}

TEST_CASE("sampling is deterministic and in range") {
  SampleConfig cfg;
  CHECK(sample_vector(cfg, 0).empty());
  CHECK(sample_vector(cfg, 10, 3) == sample_vector(cfg, 10, 3));
  int differ = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    SampleConfig c{s, 9, 6};
    auto a = sample_vector(c, 8, 1), b = sample_vector(c, 8, 2);
    for (const auto& x : a) CHECK(abs(x) <= 9);
    differ += (a != b);
  }
  // probability of a collision is (1/19)^8 per seed
  CHECK(differ == 100);
  SampleConfig bad{1, 0, 1};
  CHECK_THROWS_AS(sample_vector(bad, 3), Error);
}

TEST_CASE("generic max rank escalation") {
  SampleConfig cfg;
  auto r = generic_max_rank(cfg, 3, [](const QVector&) { return std::size_t{2}; });
  CHECK(r.stabilised);
  CHECK(r.rank == 2);
  int calls = 0;
  auto flaky = generic_max_rank(cfg, 3, [&](const QVector&) { return std::size_t(calls++ % 2); });
  CHECK(!flaky.stabilised);
  CHECK(flaky.rank == 1);
}

TEST_CASE("interpolation of graded components") {
  auto c = leading_graded_component([](const Rational& t) -> Rational { return 3 * t * t + t; }, 3);
  CHECK(c == QVector{0, 1, 3, 0});
  auto k = leading_graded_component([](const Rational&) { return Rational(5); }, 2);
  CHECK(k == QVector{5, 0, 0});

  // Delta_2 = det on sl2 along f + t z, z = [[a, b], [c, -a]]:
  // det(f + t z) = -(a t)^2 - (b t)(1 + c t) = -b t - (a^2 + b c) t^2
  Rational a = 2, b = -3, cc = 5;
  auto d = leading_graded_component(
      [&](const Rational& t) -> Rational {
        QMatrix m(2, 2);
        m(0, 0) = a * t;
        m(0, 1) = b * t;
        m(1, 0) = 1 + cc * t;
        m(1, 1) = -a * t;
        return determinant(m);
      },
      2);
  CHECK(d == QVector{0, -b, -(a * a + b * cc)});

  std::mt19937_64 g(19);
  for (int t = 0; t < 50; ++t) {
    std::size_t deg = g() % 6;
    QVector p(deg + 1);
    for (auto& x : p) x = q(static_cast<long>(g() % 21) - 10, static_cast<long>(1 + g() % 3));
    auto eval = [&](const Rational& s) -> Rational {
      Rational acc = 0;
      for (std::size_t i = p.size(); i-- > 0;) acc = acc * s + p[i];
      return acc;
    };
    auto got = leading_graded_component(eval, deg + 2);
    QVector want = p;
    want.resize(deg + 3);
    CHECK(got == want);
  }
}

TEST_CASE("univariate gcd") {
  // (t-1)(t+2) and (t-1)(t-3)
  UPoly a{-2, 1, 1}, b{3, -4, 1};
  CHECK(upoly_gcd(a, b) == UPoly{-1, 1});
  CHECK(upoly_gcd(UPoly{2, 1}, UPoly{3, 1}) == UPoly{1});
  CHECK(degree(UPoly{0, 0}) == -1);
}
