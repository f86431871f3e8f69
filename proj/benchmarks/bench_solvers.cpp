#include <nematic/director.hpp>
#include <nematic/evolution.hpp>
#include <nematic/standing_wave.hpp>
#include <nematic/tridiagonal.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

using namespace nematic;

namespace {

StandingWave const& wave()
{
    static StandingWave const sw = picard_fixed_point(Params{}, default_standing_grid());
    return sw;
}

void BM_MarchU(benchmark::State& state)
{
    auto const& sw = wave();
    for (auto _ : state)
        benchmark::DoNotOptimize(march_u(sw.u0, sw.rho, sw.params));
}
BENCHMARK(BM_MarchU);

void BM_ShootDirector(benchmark::State& state)
{
    auto const& sw = wave();
    for (auto _ : state)
        benchmark::DoNotOptimize(shoot_director(sw.u, sw.params));
}
BENCHMARK(BM_ShootDirector)->Unit(benchmark::kMillisecond);

void BM_Picard(benchmark::State& state)
{
    auto const g = Grid::half_line(std::size_t(state.range(0)), 6.0 / double(state.range(0) - 1));
    for (auto _ : state)
        benchmark::DoNotOptimize(picard_iterate(Params{}, g));
}
BENCHMARK(BM_Picard)->Arg(751)->Arg(3001)->Unit(benchmark::kMillisecond);

void BM_NewtonDirector(benchmark::State& state)
{
    auto const& sw = wave();
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle_newton_director(sw.u, sw.params));
}
BENCHMARK(BM_NewtonDirector)->Unit(benchmark::kMillisecond);

void BM_NlsStep(benchmark::State& state)
{
    auto s = standing_wave_state(wave(), DirectorInit::mirror);
    Params p = wave().params;
    p.lambda = 0.0;
    NlsPropagator prop{s.grid(), 1e-3, p};
    for (auto _ : state) {
        prop.step(s);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(s.u.size()));
}
BENCHMARK(BM_NlsStep);

void BM_WaveStep(benchmark::State& state)
{
    auto s = standing_wave_state(wave(), DirectorInit::mirror);
    Params p = wave().params;
    p.lambda = 0.0;
    for (auto _ : state) {
        wave_advance(s, 1e-3, p);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(s.u.size()));
}
BENCHMARK(BM_WaveStep);

void BM_Thomas(benchmark::State& state)
{
    auto const n = std::size_t(state.range(0));
    std::vector<double> lo(n, -1.0), d(n, 2.5), up(n, -1.0), rhs(n);
    for (std::size_t i = 0; i < n; ++i)
        rhs[i] = std::sin(0.01 * double(i));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_tridiagonal(lo, d, up, rhs));
    state.SetItemsProcessed(state.iterations() * std::int64_t(n));
}
BENCHMARK(BM_Thomas)->Arg(3001)->Arg(48001);

void BM_ThomasComplexPrefactored(benchmark::State& state)
{
    using C = std::complex<double>;
    auto const n = std::size_t(state.range(0));
    TridiagonalSolver<C> const solver{std::vector<C>(n, C{0, -0.25}), std::vector<C>(n, C{1, 0.5}),
                                      std::vector<C>(n, C{0, -0.25})};
    std::vector<C> x(n, C{1, 0});
    for (auto _ : state) {
        solver.solve_in_place(x);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(n));
}
BENCHMARK(BM_ThomasComplexPrefactored)->Arg(6001);

}  // namespace

BENCHMARK_MAIN();
