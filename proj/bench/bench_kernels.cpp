// Parallel against serial exact rank on random integer matrices.
#include <benchmark/benchmark.h>

#include "lieinv/qlinalg.hpp"

using namespace lieinv;

namespace {

// rank deficient by a quarter: the last rows are combinations of the first
QMatrix test_matrix(std::size_t n) {
  SampleConfig cfg;
  QMatrix m(n, n);
  std::size_t free_rows = n - n / 4;
  for (std::size_t r = 0; r < free_rows; ++r) {
    QVector v = sample_vector(cfg, n, r, 90);
    for (std::size_t c = 0; c < n; ++c) m(r, c) = v[c];
  }
  for (std::size_t r = free_rows; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = m(r - free_rows, c) + 2 * m(r - free_rows + 1, c);
  return m;
}

void BM_rank(benchmark::State& state) {
  QMatrix m = test_matrix(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}

void BM_rank_serial(benchmark::State& state) {
  QMatrix m = test_matrix(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rank_serial(m));
}

}  // namespace

BENCHMARK(BM_rank)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank_serial)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
