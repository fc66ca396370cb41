#include <benchmark/benchmark.h>

#include "p1/bvp.hpp"
#include "p1/sweep.hpp"

namespace {

// Shooting-map scan over slopes, the workload behind the brute-force BVP check.
std::function<double(std::size_t)> shoot_kernel(std::size_t n) {
    return [n](std::size_t i) {
        const p1::BvpProblem p{0.0, 1.0, -1.0, 1.0};
        const double s = -5.0 + 25.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        return p1::shoot(p, s).value;
    };
}

void BM_sweep_serial(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto fn = shoot_kernel(n);
    for (auto _ : st) benchmark::DoNotOptimize(p1::sweep_serial<double>(n, fn));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_sweep_parallel(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto fn = shoot_kernel(n);
    for (auto _ : st) benchmark::DoNotOptimize(p1::sweep_parallel<double>(n, fn));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_sweep_serial)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_parallel)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
