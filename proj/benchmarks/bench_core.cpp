#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "wiman/fft.hpp"
#include "wiman/series.hpp"
#include "wiman/sharpness.hpp"
#include "wiman/torus.hpp"

using namespace wiman;

static void BM_MaximalTerm(benchmark::State& state) {
    auto rule = CoefficientRule::sqrt_half();
    RadiusVector r = RadiusVector::dyadic(1, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(maximal_term(rule, r).ln_mu);
}
BENCHMARK(BM_MaximalTerm)->Arg(6)->Arg(10)->Arg(14);

static void BM_SumModulus(benchmark::State& state) {
    auto rule = CoefficientRule::sqrt_half();
    RadiusVector r = RadiusVector::dyadic(1, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sum_modulus(rule, r, 1e-12));
}
BENCHMARK(BM_SumModulus)->Arg(6)->Arg(9);

static void BM_Fft(benchmark::State& state) {
    std::vector<std::complex<double>> a(static_cast<std::size_t>(state.range(0)),
                                        {1.0, -0.5});
    for (auto _ : state) {
        auto copy = a;
        fft_inplace(copy);
        benchmark::DoNotOptimize(copy.data());
    }
}
BENCHMARK(BM_Fft)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

static void BM_TorusMax(benchmark::State& state) {
    auto rule = CoefficientRule::sqrt_half();
    RadiusVector r = RadiusVector::dyadic(1, static_cast<int>(state.range(0)));
    auto trunc = truncation_degree(maximal_term(rule, r).ln_mu, r, 0.25);
    TorusGridSpec grid;
    SignRealization signs({SignKind::Rademacher, 1}, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(torus_max(rule, signs, r, trunc, grid).ln_max);
}
BENCHMARK(BM_TorusMax)->Arg(5)->Arg(8);

static void BM_GInverse(benchmark::State& state) {
    SharpnessProfile prof;
    double v = prof.g(0.999);
    for (auto _ : state) benchmark::DoNotOptimize(prof.g_inverse(v, 1e-10));
}
BENCHMARK(BM_GInverse);

BENCHMARK_MAIN();
