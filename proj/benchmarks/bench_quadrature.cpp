#include <benchmark/benchmark.h>

#include <cmath>
#include <limits>

#include "vcorr/quadrature.hpp"

using vcorr::cplx;

static void BM_Oscillatory(benchmark::State& state)
{
    const double X = static_cast<double>(state.range(0));
    auto g = [X](double k) { return cplx(std::sin(k * X) / (k + 1.0)); };
    for (auto _ : state) benchmark::DoNotOptimize(vcorr::integrate_oscillatory(g, X));
}
BENCHMARK(BM_Oscillatory)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_PrincipalValue(benchmark::State& state)
{
    const auto method = state.range(0) ? vcorr::PvMethod::subtraction : vcorr::PvMethod::excision;
    auto spec = vcorr::QuadratureSpec::principal_value(1.0);
    spec.pv_method = method;
    auto g = [](double k) { return cplx(std::sin(2.5 * k) / (k - 1.0)); };
    for (auto _ : state)
        benchmark::DoNotOptimize(
            vcorr::integrate_pv(g, 1.0, spec, 0.0, std::numeric_limits<double>::infinity(), 2.5));
}
BENCHMARK(BM_PrincipalValue)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
