#include <benchmark/benchmark.h>

#include <random>

#include "cchaos/kernel.hpp"
#include "cchaos/moments.hpp"
#include "cchaos/ou.hpp"
#include "cchaos/sampling.hpp"

using namespace cchaos;

namespace {

Kernel gaussian_kernel(std::size_t n, int p, int q, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Kernel f(Space::unit(n), p, q);
    for (std::size_t k = 0; k < f.size(); ++k) {
        f[k] = {g(rng), g(rng)};
    }
    return symmetrize(f);
}

void BM_Contract(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Kernel f = gaussian_kernel(n, 2, 1, 1);
    const Kernel h = reverse_conjugate(f);
    for (auto _ : state) {
        benchmark::DoNotOptimize(contract(f, h, 1, 1));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Contract)->RangeMultiplier(2)->Range(4, 32)->Complexity();

void BM_Symmetrize(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    Kernel f(Space::unit(n), 2, 2);
    for (std::size_t k = 0; k < f.size(); ++k) {
        f[k] = {g(rng), g(rng)};
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(symmetrize(f));
    }
}
BENCHMARK(BM_Symmetrize)->Arg(4)->Arg(8)->Arg(16);

void BM_FourthGap(benchmark::State& state)
{
    const Kernel f = gaussian_kernel(static_cast<std::size_t>(state.range(0)), 2, 1, 3);
    const auto route = static_cast<GapRoute>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fourth_gap(f, route));
    }
}
BENCHMARK(BM_FourthGap)->ArgsProduct({{4, 8}, {0, 1, 2}});

void BM_SampleChaos(benchmark::State& state)
{
    const ChaosVariable F = ChaosVariable::single(gaussian_kernel(8, 2, 1, 4));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_chaos(F, 1000, 5, 1));
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SampleChaos);

void BM_OUStructuredStats(benchmark::State& state)
{
    OUParams p;
    p.T = static_cast<double>(state.range(0));
    const SpacePtr s = make_grid(p, GridSpec::with_spacing(p.T, 0.05));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ou_structured_stats(p, s, normalization_factor(p)));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OUStructuredStats)->RangeMultiplier(4)->Range(50, 3200)->Complexity(benchmark::oN);

void BM_OUSampler(benchmark::State& state)
{
    OUParams p;
    p.T = 50.0;
    const SpacePtr s = make_grid(p, GridSpec::with_spacing(p.T, 0.05));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_ou_statistic(p, s, 1.0, 1000, 6, 1));
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_OUSampler);

}  // namespace

BENCHMARK_MAIN();
