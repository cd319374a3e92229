#include <benchmark/benchmark.h>

#include <random>

#include "rigidlab/commsim.hpp"
#include "rigidlab/rigidity.hpp"
#include "rigidlab/sysds.hpp"

using namespace rigidlab;

namespace {

BitMatrix random_mat(int rows, int cols, std::mt19937_64& rng) {
  BitMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, rng() & 1);
  return m;
}

void BM_rref(benchmark::State& state) {
  std::mt19937_64 rng(1);
  int n = static_cast<int>(state.range(0));
  BitMatrix m = random_mat(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_rref)->Arg(16)->Arg(64)->Arg(256);

void BM_distance_to_subspace(benchmark::State& state) {
  std::mt19937_64 rng(2);
  int n = 24;
  int dim = static_cast<int>(state.range(0));
  std::vector<BitVector> rows;
  for (int i = 0; i < dim; ++i) {
    BitVector v(n);
    for (int j = 0; j < n; ++j) v.set(j, rng() & 1);
    rows.push_back(std::move(v));
  }
  Subspace u = Subspace::from_span(n, rows);
  BitVector q(n);
  for (int j = 0; j < n; ++j) q.set(j, rng() & 1);
  for (auto _ : state) benchmark::DoNotOptimize(distance_to_subspace(q, u));
}
BENCHMARK(BM_distance_to_subspace)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_rigidity_value(benchmark::State& state) {
  QuerySet q = gen_upsilon(2);
  int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rigidity_value(q, r));
}
BENCHMARK(BM_rigidity_value)->Arg(1)->Arg(2);

void BM_t_direct(benchmark::State& state) {
  QuerySet q = gen_upsilon(2);
  int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(t_direct(q, r));
}
BENCHMARK(BM_t_direct)->Arg(1)->Arg(2);

void BM_bias_enumerated(benchmark::State& state) {
  std::mt19937_64 rng(3);
  int root = static_cast<int>(state.range(0));
  BitMatrix m = random_mat(root, root, rng);
  for (auto _ : state) benchmark::DoNotOptimize(bias(m));
}
BENCHMARK(BM_bias_enumerated)->Arg(3)->Arg(4)->Arg(5);

void BM_moment(benchmark::State& state) {
  int root = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(moment(root, 2));
}
BENCHMARK(BM_moment)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
