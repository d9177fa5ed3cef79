#include "ehlink/engine.hpp"
#include "ehlink/harvest.hpp"
#include "ehlink/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace ehlink;

SimConfig bench_config(PolicyKind kind, std::uint64_t horizon) {
    SimConfig cfg;
    cfg.horizon = horizon;
    cfg.seed = 99;
    cfg.rx_cost = 0.5;
    cfg.tx_harvest = HarvestProcess::bernoulli(0.4);
    cfg.rx_harvest = HarvestProcess::bernoulli(kind == PolicyKind::Unconstrained ? 0.6 : 0.3);
    cfg.tx_capacity = 50.0;
    cfg.rx_capacity = 50.0;
    cfg.policy.kind = kind;
    if (kind == PolicyKind::Dilated) {
        cfg.policy.dilation_f = 100;
    }
    if (kind == PolicyKind::Uncoordinated) {
        cfg.policy.pattern = BatchPattern{2, 1};
    }
    return cfg;
}

void BM_SampleArrival(benchmark::State& state) {
    auto proc = HarvestProcess::bernoulli(0.4, 1.0);
    RandomStream rng(1);
    double sink = 0.0;
    for (auto _ : state) {
        sink += proc.sample(rng);
    }
    benchmark::DoNotOptimize(sink);
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SampleArrival);

void BM_RunLink(benchmark::State& state, PolicyKind kind) {
    const std::uint64_t horizon = static_cast<std::uint64_t>(state.range(0));
    SimConfig cfg = bench_config(kind, horizon);
    for (auto _ : state) {
        SimSummary s = run_link(cfg).summary;
        benchmark::DoNotOptimize(s.throughput);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(horizon));
}
BENCHMARK_CAPTURE(BM_RunLink, unconstrained, PolicyKind::Unconstrained)->Arg(1 << 18);
BENCHMARK_CAPTURE(BM_RunLink, coordinated, PolicyKind::Coordinated)->Arg(1 << 18);
BENCHMARK_CAPTURE(BM_RunLink, dilated_f100, PolicyKind::Dilated)->Arg(1 << 18);
BENCHMARK_CAPTURE(BM_RunLink, uncoordinated, PolicyKind::Uncoordinated)->Arg(1 << 18);

void BM_Sweep(benchmark::State& state) {
    SimConfig cfg = bench_config(PolicyKind::Coordinated, 1 << 16);
    std::vector<double> values{0.1, 0.2, 0.3, 0.4};
    for (auto _ : state) {
        auto rows = run_sweep(cfg, SweepAxis::RxProb, values, 2);
        benchmark::DoNotOptimize(rows.front().summary.throughput);
    }
    state.SetItemsProcessed(state.iterations() * (1 << 16) * 8);
}
BENCHMARK(BM_Sweep);

} // namespace

BENCHMARK_MAIN();
