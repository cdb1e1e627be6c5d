// Microbenchmarks for the hot paths: ring arithmetic, exact feasibility,
// the brute-force oracle, classification and the randomized solver.

#include <benchmark/benchmark.h>

#include "ringlin/approx.hpp"
#include "ringlin/catalog.hpp"
#include "ringlin/classify.hpp"
#include "ringlin/eqsys.hpp"
#include "ringlin/exact.hpp"
#include "ringlin/geometry.hpp"

using namespace ringlin;

namespace {

void BM_RingMul(benchmark::State& state) {
  auto R = catalog_ring(state.range(0) == 0 ? "z8" : "table1");
  Elem acc = 1;
  for (auto _ : state) {
    for (Elem a = 0; a < R->size(); ++a)
      for (Elem b = 0; b < R->size(); ++b)
        acc ^= R->mul(a, b) + R->add(a, b);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * R->size() * R->size() * 2);
}
BENCHMARK(BM_RingMul)->Arg(0)->Arg(1);

void BM_Feasible(benchmark::State& state) {
  auto R = catalog_ring("z8");
  auto sys = random_instance(R, static_cast<uint32_t>(state.range(0)), 8, 0.0,
                             std::nullopt, 17, /*with_restrictions=*/true);
  for (auto _ : state) {
    auto a = feasible(sys);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_Feasible)->Arg(3)->Arg(6);

void BM_BruteMin(benchmark::State& state) {
  auto R = catalog_ring("z4");
  auto sys = random_instance(R, static_cast<uint32_t>(state.range(0)), 8, 0.8,
                             1, 23);
  for (auto _ : state) {
    auto b = brute_min(sys);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_BruteMin)->Arg(3)->Arg(5);

void BM_Classify(benchmark::State& state) {
  const char* names[] = {"z8", "table1", "tangle16", "helly32"};
  auto R = catalog_ring(names[state.range(0)]);
  for (auto _ : state) {
    auto cl = classify(R);
    benchmark::DoNotOptimize(cl);
  }
}
BENCHMARK(BM_Classify)->DenseRange(0, 3);

void BM_ExponentModel(benchmark::State& state) {
  auto R = catalog_ring("r_347");
  for (auto _ : state) {
    auto m = exponent_model(*R);
    benchmark::DoNotOptimize(m.nonzero.size());
  }
}
BENCHMARK(BM_ExponentModel);

void BM_BergenSolve(benchmark::State& state) {
  auto R = catalog_ring("z4");
  auto w = chain_witness(R);
  auto sys = random_instance(R, 3, 6, 1.0, 1, 11);
  ApproxOptions opt;
  opt.trials = static_cast<uint32_t>(state.range(0));
  for (auto _ : state) {
    auto res = bergen_solve(sys, sys.k, w, opt);
    benchmark::DoNotOptimize(res.accepted);
  }
}
BENCHMARK(BM_BergenSolve)->Arg(1)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
