#include <benchmark/benchmark.h>

#include "vcorr/vcorr.hpp"

using namespace vcorr;

namespace {

const UnitSystem nat = UnitSystem::natural();

Atom atom(Vec3 pos, double omega)
{
    Atom a;
    a.position = pos;
    a.omega = omega;
    a.dipole = {0, 0, 1};
    return a;
}

} // namespace

static void BM_DressedGround(benchmark::State& state)
{
    const DressedCorrRequest req{atom({0, 0, 0}, 1.0), {2, 1, 0}, {-1, 3, 1}, false};
    for (auto _ : state) benchmark::DoNotOptimize(dressed_ground_corr(req, nat));
}
BENCHMARK(BM_DressedGround);

static void BM_DressedGroundDoubleIntegral(benchmark::State& state)
{
    const DressedCorrRequest req{atom({0, 0, 0}, 1.0), {2, 1, 0}, {-1, 3, 1}, false};
    for (auto _ : state) benchmark::DoNotOptimize(dressed_ground_corr_double_integral(req, nat));
}
BENCHMARK(BM_DressedGroundDoubleIntegral)->Unit(benchmark::kMillisecond);

static void BM_TwoBody(benchmark::State& state)
{
    const auto route = state.range(0) ? TwoBodyRoute::real_axis : TwoBodyRoute::imaginary_frequency;
    const Atom B = atom({0, 0, 0}, 1.0), C = atom({0, 0, 2}, 1.3);
    for (auto _ : state) benchmark::DoNotOptimize(two_body_energy(B, C, Channel::ee, nat, route));
}
BENCHMARK(BM_TwoBody)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_ThreeBodyStatic(benchmark::State& state)
{
    const Atom A = atom({0, 0, 0}, 1.0), B = atom({10, 0, 0}, 1.3), C = atom({5, 8.66, 0}, 0.8);
    for (auto _ : state) benchmark::DoNotOptimize(three_body_static(A, B, C, nat));
}
BENCHMARK(BM_ThreeBodyStatic)->Unit(benchmark::kMillisecond);

static void BM_ThreeBodyDynamic(benchmark::State& state)
{
    const Atom A = atom({0, 0, 0}, 1.0), B = atom({3, 0, 0}, 1.3), C = atom({0, 4, 0}, 0.8);
    for (auto _ : state) benchmark::DoNotOptimize(three_body_dynamic_symmetrized(A, B, C, 4.5, nat));
}
BENCHMARK(BM_ThreeBodyDynamic)->Unit(benchmark::kMillisecond);

// Mode-sum cost grows as n_max^3; VC_THREADS caps the workers.
static void BM_ModeSumScalar(benchmark::State& state)
{
    const ModeGrid grid{40.0, static_cast<int>(state.range(0)), 0.5, true};
    for (auto _ : state) benchmark::DoNotOptimize(mode_sum_scalar_corr(grid, {0, 0, 0}, {0, 0, 1}, nat));
}
BENCHMARK(BM_ModeSumScalar)->Arg(24)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
