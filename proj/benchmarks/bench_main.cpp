#include <benchmark/benchmark.h>

#include <cmath>

#include "strongdrive/strongdrive.hpp"

using namespace strongdrive;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Argument is g; ω = 1 throughout, so g is also g/ω.
void BM_propagate_50_periods(benchmark::State& state) {
    const DriveParams p(0.1, static_cast<double>(state.range(0)), 1.0);
    const auto grid = uniform_grid(50.0 * p.period(), 501);
    const auto cfg = IntegratorConfig::defaults_for(p);
    std::size_t steps = 0;
    for (auto _ : state) {
        const auto traj = propagate(p, StateVector(basis0()), grid, cfg);
        steps = traj.accepted_steps;
        benchmark::DoNotOptimize(traj.states.back());
    }
    state.counters["steps"] = static_cast<double>(steps);
}
BENCHMARK(BM_propagate_50_periods)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_phase_integral_quadrature(benchmark::State& state) {
    const DriveParams p(0.1, static_cast<double>(state.range(0)), 1.0);
    const double t = 20.0 * p.period();
    for (auto _ : state)
        benchmark::DoNotOptimize(phase_integral_quadrature(t, 1, p).value);
}
BENCHMARK(BM_phase_integral_quadrature)->Arg(1)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_phase_integral_bessel(benchmark::State& state) {
    const DriveParams p(0.1, static_cast<double>(state.range(0)), 1.0);
    const double t = 20.0 * p.period();
    const int terms = default_bessel_terms(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(phase_integral_bessel(t, 1, p, terms).value);
}
BENCHMARK(BM_phase_integral_bessel)->Arg(1)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_approx_solution(benchmark::State& state) {
    const DriveParams p(0.1, 5.0, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(approx_solution(37.0, kInvSqrt2, kInvSqrt2, p));
}
BENCHMARK(BM_approx_solution)->Unit(benchmark::kMicrosecond);

// Argument is the Picard order; cost grows with the nesting depth.
void BM_picard_eval(benchmark::State& state) {
    const auto sol = picard_iterate(DriveParams(0.1, 2.0, 1.0), 1.0, 0.0, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(sol.psi(10.0));
}
BENCHMARK(BM_picard_eval)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_infidelity_scan(benchmark::State& state) {
    const double deltas[] = {0.2, 0.1, 0.05, 0.025};
    ScanOptions opts;
    opts.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(infidelity_scan(DriveParams(0.0, 1.0, 1.0), deltas, 10.0, 321, 1e-10, opts));
}
BENCHMARK(BM_infidelity_scan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
