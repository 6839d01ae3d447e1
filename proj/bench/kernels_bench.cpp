#include <benchmark/benchmark.h>

#include "qkz/kernels.hpp"
#include "qkz/report.hpp"
#include "qkz/tensor.hpp"

using namespace qkz;

namespace {

// Chain of N sites of dimension d, applying a two-site operator at the middle
// pair to a block of `cols` columns.
struct Setup {
  Dims dims;
  Mat op, x;
  int i, j;

  Setup(int d, int N, int cols) : dims(N, d), i(N / 2 - 1), j(N / 2) {
    Rng rng(1);
    op.resize(d * d, d * d);
    for (int r = 0; r < d * d; ++r)
      for (int c = 0; c < d * d; ++c) op(r, c) = rng.normal_pair();
    const long D = kernels::total_dim(dims);
    x.resize(D, cols);
    for (long r = 0; r < D; ++r)
      for (int c = 0; c < cols; ++c) x(r, c) = rng.normal_pair();
  }
};

void BM_pair_serial(benchmark::State& st) {
  Setup s(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)), static_cast<int>(st.range(2)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::apply_pair_serial(s.op, s.i, s.j, s.dims, s.x));
}

void BM_pair_parallel(benchmark::State& st) {
  Setup s(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)), static_cast<int>(st.range(2)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::apply_pair_parallel(s.op, s.i, s.j, s.dims, s.x));
}

// Dense alternative: embed with Kronecker products, then a full matrix product.
void BM_pair_dense(benchmark::State& st) {
  Setup s(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)), static_cast<int>(st.range(2)));
  const int d = s.dims[0];
  long left = 1, right = 1;
  for (int k = 0; k < s.i; ++k) left *= d;
  for (int k = s.j + 1; k < static_cast<int>(s.dims.size()); ++k) right *= d;
  for (auto _ : st) {
    const Mat full = kron(Mat::Identity(left, left), kron(s.op, Mat::Identity(right, right)));
    benchmark::DoNotOptimize(Mat(full * s.x));
  }
}

void BM_permutation_serial(benchmark::State& st) {
  Setup s(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)), static_cast<int>(st.range(2)));
  std::vector<int> cyc(s.dims.size());
  for (std::size_t k = 0; k < cyc.size(); ++k) cyc[k] = static_cast<int>((k + cyc.size() - 1) % cyc.size());
  for (auto _ : st) benchmark::DoNotOptimize(kernels::apply_permutation_serial(cyc, s.dims, s.x));
}

void BM_permutation_parallel(benchmark::State& st) {
  Setup s(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)), static_cast<int>(st.range(2)));
  std::vector<int> cyc(s.dims.size());
  for (std::size_t k = 0; k < cyc.size(); ++k) cyc[k] = static_cast<int>((k + cyc.size() - 1) % cyc.size());
  for (auto _ : st) benchmark::DoNotOptimize(kernels::apply_permutation_parallel(cyc, s.dims, s.x));
}

// {site dim, sites, columns}
#define QKZ_SHAPES ->Args({2, 6, 64})->Args({3, 4, 81})->Args({3, 6, 32})->Args({2, 10, 8})

BENCHMARK(BM_pair_serial) QKZ_SHAPES;
BENCHMARK(BM_pair_parallel) QKZ_SHAPES;
BENCHMARK(BM_pair_dense)->Args({2, 6, 64})->Args({3, 4, 81})->Args({3, 6, 32});
BENCHMARK(BM_permutation_serial) QKZ_SHAPES;
BENCHMARK(BM_permutation_parallel) QKZ_SHAPES;

}  // namespace

BENCHMARK_MAIN();
