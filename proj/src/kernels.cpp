// Fraction-free rank kernels. The parallel and serial versions perform the
// same elimination; only the row update loop differs.
#include <omp.h>

#include "lieinv/qlinalg.hpp"

namespace lieinv {

namespace {

// Rows scaled by the lcm of their denominators; rank is unchanged.
std::vector<std::vector<Integer>> integer_rows(const QMatrix& m) {
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (const auto& x : m.row(i)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& x = m(i, j);
      if (sgn(x) == 0) continue;
      a[i][j] = x.get_num() * (l / x.get_den());
    }
  }
  return a;
}

inline void bareiss_update(std::vector<Integer>& row, const std::vector<Integer>& pivot_row, const Integer& pivot,
                           const Integer& prev, std::size_t c, Integer& tmp) {
  const Integer factor = row[c];
  const std::size_t n = row.size();
  if (sgn(factor) == 0) {
    for (std::size_t j = c + 1; j < n; ++j) {
      if (sgn(row[j]) == 0) continue;
      mpz_mul(row[j].get_mpz_t(), row[j].get_mpz_t(), pivot.get_mpz_t());
      mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
    }
    return;
  }
  for (std::size_t j = c + 1; j < n; ++j) {
    mpz_mul(tmp.get_mpz_t(), factor.get_mpz_t(), pivot_row[j].get_mpz_t());
    mpz_mul(row[j].get_mpz_t(), row[j].get_mpz_t(), pivot.get_mpz_t());
    mpz_sub(row[j].get_mpz_t(), row[j].get_mpz_t(), tmp.get_mpz_t());
    mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
  }
  row[c] = 0;
}

template <bool Parallel>
std::size_t bareiss_rank(const QMatrix& m) {
  auto a = integer_rows(m);
  const std::size_t rows = m.rows(), cols = m.cols();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Integer pivot = a[r][c];
    const auto& prow = a[r];
    const long lo = static_cast<long>(r + 1), hi = static_cast<long>(rows);
    if constexpr (Parallel) {
#pragma omp parallel
      {
        Integer tmp;
#pragma omp for schedule(dynamic, 4)
        for (long i = lo; i < hi; ++i) bareiss_update(a[i], prow, pivot, prev, c, tmp);
      }
    } else {
      Integer tmp;
      for (long i = lo; i < hi; ++i) bareiss_update(a[i], prow, pivot, prev, c, tmp);
    }
    prev = pivot;
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(const QMatrix& m) { return bareiss_rank<true>(m); }

std::size_t rank_serial(const QMatrix& m) { return bareiss_rank<false>(m); }

}  // namespace lieinv
