#include <benchmark/benchmark.h>

#include "netsync/certificate.hpp"

namespace {

using namespace netsync;

const OscillatorModel& chua() {
    static const OscillatorModel osc = chua_preset();
    return osc;
}

RationalFunction loop_gain() {
    return lft_scalar(chua().z_osc, RationalFunction::s().reciprocal().scaled(2.6));
}

void BM_MagnitudeSweepSerial(benchmark::State& state) {
    const auto h = loop_gain();
    const auto omegas = log_grid(1e-3, 1e3, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::magnitude_sweep(h, omegas));
}

void BM_MagnitudeSweepParallel(benchmark::State& state) {
    const auto h = loop_gain();
    const auto omegas = log_grid(1e-3, 1e3, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::magnitude_sweep(h, omegas));
}

kernels::MatrixAt ring(Eigen::Index n) {
    RealMatrix lap = RealMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index j = (i + 1) % n;
        lap(i, i) += 1.0;
        lap(j, j) += 1.0;
        lap(i, j) -= 1.0;
        lap(j, i) -= 1.0;
    }
    return [lap](Complex s) { ComplexMatrix y = lap.cast<Complex>() / s; return y; };
}

void BM_MatrixGainSerial(benchmark::State& state) {
    const auto y = ring(state.range(0));
    const auto omegas = log_grid(1e-3, 1e3, 2000);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::matrix_gain_sweep(y, chua().z_osc, omegas));
}

void BM_MatrixGainParallel(benchmark::State& state) {
    const auto y = ring(state.range(0));
    const auto omegas = log_grid(1e-3, 1e3, 2000);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::matrix_gain_sweep(y, chua().z_osc, omegas));
}

void BM_XiGridSerial(benchmark::State& state) {
    const auto grid = log_grid(1e-3, 10.0, static_cast<std::size_t>(state.range(0)));
    SweepConfig cfg;
    cfg.points = 1000;
    const kernels::GridFn fn = [&](double r, double l) { return xi_value(r, l, chua(), cfg); };
    for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::grid_map(grid, grid, fn));
}

void BM_XiGridParallel(benchmark::State& state) {
    const auto grid = log_grid(1e-3, 10.0, static_cast<std::size_t>(state.range(0)));
    SweepConfig cfg;
    cfg.points = 1000;
    const kernels::GridFn fn = [&](double r, double l) { return xi_value(r, l, chua(), cfg); };
    for (auto _ : state) benchmark::DoNotOptimize(kernels::grid_map(grid, grid, fn));
}

}  // namespace

BENCHMARK(BM_MagnitudeSweepSerial)->Arg(4000)->Arg(40000);
BENCHMARK(BM_MagnitudeSweepParallel)->Arg(4000)->Arg(40000);
BENCHMARK(BM_MatrixGainSerial)->Arg(4)->Arg(8);
BENCHMARK(BM_MatrixGainParallel)->Arg(4)->Arg(8);
BENCHMARK(BM_XiGridSerial)->Arg(10);
BENCHMARK(BM_XiGridParallel)->Arg(10);

BENCHMARK_MAIN();
