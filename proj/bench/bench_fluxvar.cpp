#include <benchmark/benchmark.h>

#include "fluxvar/chain.hpp"
#include "fluxvar/ensemble.hpp"
#include "fluxvar/lyapunov.hpp"

namespace {

using namespace fluxvar;

ChainSpec mm_chain() {
    return ChainSpec{10.0,
                     {Complex{{Member{"X1", 1}}}, Complex{{Member{"X2", 1}}}},
                     {MassAction{1.0, {1}}, MichaelisMenten{12.0, {1.0}}},
                     false};
}

SimConfig bench_config() {
    SimConfig c;
    c.t_total = 10.0;
    c.t_burn = 5.0;
    c.n_paths = 64;
    return c;
}

void BM_EnsembleSerial(benchmark::State& state) {
    const ChainModel m(mm_chain());
    const NoiseModel noise = WhiteNoiseInput{1.0, ThetaCutoff{}};
    for (auto _ : state) benchmark::DoNotOptimize(run_ensemble_serial(m, noise, bench_config()));
}

void BM_EnsembleParallel(benchmark::State& state) {
    const ChainModel m(mm_chain());
    const NoiseModel noise = WhiteNoiseInput{1.0, ThetaCutoff{}};
    EnsembleOptions o;
    o.threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_ensemble(m, noise, bench_config(), o));
}

void BM_CertifySerial(benchmark::State& state) {
    const ChainModel m(mm_chain());
    const auto spec = construct_coefficients(m, 1.0, ThetaCutoff{}, 100.0);
    for (auto _ : state) benchmark::DoNotOptimize(certify_grid_serial(spec, m, 100000));
}

void BM_CertifyParallel(benchmark::State& state) {
    const ChainModel m(mm_chain());
    const auto spec = construct_coefficients(m, 1.0, ThetaCutoff{}, 100.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(certify_grid(spec, m, 100000, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_EnsembleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CertifySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CertifyParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
