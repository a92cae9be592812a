#include <benchmark/benchmark.h>

#include "cmarith/lattice.hpp"
#include "cmarith/weilrep.hpp"

using namespace cmarith;

static void BM_ShortVectors(benchmark::State& state) {
    ImagQuadField k(7);
    auto L = HermLattice::standard_selfdual(k, int(state.range(0)));
    for (auto _ : state) {
        auto v = L.short_vectors(Rational(state.range(1)));
        benchmark::DoNotOptimize(v);
        state.counters["vectors"] = double(v.size());
    }
}
BENCHMARK(BM_ShortVectors)->Args({2, 100})->Args({2, 400})->Args({3, 100});

static void BM_ThetaCoeffs(benchmark::State& state) {
    ImagQuadField k(7);
    auto L = HermLattice::standard_selfdual(k, 2);
    for (auto _ : state) {
        auto T = L.theta_coeffs(state.range(0));
        benchmark::DoNotOptimize(T);
    }
}
BENCHMARK(BM_ThetaCoeffs)->Arg(50)->Arg(200)->Arg(1000);

static void BM_WeilMatrices(benchmark::State& state) {
    ImagQuadField k(7);
    auto L = HermLattice::rank1(k, -1).direct_sum(
        HermLattice::standard_selfdual(k, int(state.range(0))));
    for (auto _ : state) {
        auto W = generator_matrices(L);
        benchmark::DoNotOptimize(W);
    }
}
BENCHMARK(BM_WeilMatrices)->Arg(1)->Arg(2);

static void BM_AutCount(benchmark::State& state) {
    ImagQuadField k(7);
    auto L = HermLattice::standard_selfdual(k, int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(L.aut_count());
}
BENCHMARK(BM_AutCount)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
