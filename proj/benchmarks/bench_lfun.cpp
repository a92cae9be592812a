#include <benchmark/benchmark.h>

#include "cmarith/convolution.hpp"
#include "cmarith/lfun.hpp"

using namespace cmarith;

static void BM_IdealCounts(benchmark::State& state) {
    TotallyRealField F({-1, -3, 0, 1});
    for (auto _ : state) {
        auto c = F.ideal_counts(state.range(0));
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_IdealCounts)->Arg(1000)->Arg(10000);

static void BM_HeckeLambda(benchmark::State& state) {
    CMExtension E(ImagQuadField(7), TotallyRealField({-1, -1, 1}));
    auto counts = E.F().ideal_counts(state.range(0));
    std::vector<double> r(counts.size(), 0.0);
    for (size_t m = 1; m < counts.size(); ++m)
        r[m] = double(E.chi_E_of_norm(i64(m))) * double(counts[m]);
    SelfDualHeckeL engine(E.n(), double(E.conductor_factor()), std::move(r));
    for (auto _ : state) benchmark::DoNotOptimize(engine.lambda(0));
}
BENCHMARK(BM_HeckeLambda)->Arg(2000)->Arg(10000);

static void BM_ScalarVectorIdentity(benchmark::State& state) {
    ImagQuadField k(7);
    auto g = cm_newform(k, 3, 7 * (state.range(0) + 1));
    auto Lam = HermLattice::standard_selfdual(k, 2);
    for (auto _ : state) {
        auto rep = scalar_vector_identity(g, Lam, state.range(0));
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_ScalarVectorIdentity)->Arg(10)->Arg(30);

BENCHMARK_MAIN();
