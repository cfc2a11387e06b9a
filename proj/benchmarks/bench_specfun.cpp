#include <benchmark/benchmark.h>

#include "vcorr/specfun.hpp"

// Arguments straddle the series/asymptotic switch at z = 4.
static void BM_AuxiliaryF(benchmark::State& state)
{
    const double z = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(vcorr::auxiliary_f(z));
}
BENCHMARK(BM_AuxiliaryF)->Arg(1)->Arg(39)->Arg(41)->Arg(1000);

static void BM_AuxiliaryFDerivs(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(vcorr::auxiliary_f_derivs(2.5));
}
BENCHMARK(BM_AuxiliaryFDerivs);

static void BM_PvSineKernelDerivs(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(vcorr::pv_sine_kernel_derivs(7.0));
}
BENCHMARK(BM_PvSineKernelDerivs);

BENCHMARK_MAIN();
