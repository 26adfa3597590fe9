#include <benchmark/benchmark.h>

#include "qslkit/channels.hpp"
#include "qslkit/divergences.hpp"
#include "qslkit/qsl.hpp"
#include "qslkit/sampling.hpp"
#include "qslkit/scenario.hpp"
#include "qslkit/verify.hpp"

using namespace qslkit;

static void BM_HermitianEig(benchmark::State& state) {
    Rng rng(7);
    const auto a = random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(a));
}
BENCHMARK(BM_HermitianEig)->Arg(2)->Arg(3)->Arg(4)->Arg(8);

static void BM_LogSpectral(benchmark::State& state) {
    Rng rng(8);
    const auto rho = random_density_matrix(static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(matrix_log_spectral(rho.matrix()));
}
BENCHMARK(BM_LogSpectral)->Arg(2)->Arg(4);

static void BM_LogIntegral(benchmark::State& state) {
    Rng rng(8);
    const auto rho = random_density_matrix(static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(matrix_log_integral(rho.matrix()));
}
BENCHMARK(BM_LogIntegral)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_RelativeEntropy(benchmark::State& state) {
    Rng rng(9);
    const auto a = from_bloch(random_bloch(rng));
    const auto b = from_bloch(random_bloch(rng));
    for (auto _ : state) benchmark::DoNotOptimize(relative_entropy(a, b));
}
BENCHMARK(BM_RelativeEntropy);

static void BM_EvaluateQsl(benchmark::State& state) {
    QslOptions opts;
    opts.speed_mode = state.range(0) ? SpeedMode::KrausBound : SpeedMode::Exact;
    const Trajectory traj({0.6, 0.785, 0.3}, KrausChannel{ChannelKind::GeneralizedAmplitudeDamping, 1.0, 0.1});
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_qsl(traj, 1.5, opts));
}
BENCHMARK(BM_EvaluateQsl)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_FigureGrid(benchmark::State& state) {
    auto cfg = depolarizing_figure_grid(SpeedMode::KrausBound, static_cast<int>(state.range(0)));
    cfg.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(run_scenario(cfg));
}
BENCHMARK(BM_FigureGrid)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
