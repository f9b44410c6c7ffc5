#include <benchmark/benchmark.h>

#include "illiqnet/illiquidity.hpp"
#include "illiqnet/market_data.hpp"
#include "illiqnet/rng.hpp"
#include "illiqnet/synthetic_market.hpp"
#include "illiqnet/union_find.hpp"

using namespace illiqnet;

static void BM_compute_illiquidity(benchmark::State& state) {
    QuoteSnapshot s;
    for (int l = 0; l < kBookLevels; ++l) {
        s.ask_prices.push_back(10.01 + 0.01 * l);
        s.ask_volumes.push_back(100);
        s.bid_prices.push_back(9.99 - 0.01 * l);
        s.bid_volumes.push_back(100);
    }
    for (auto _ : state) benchmark::DoNotOptimize(compute_illiquidity(s));
}
BENCHMARK(BM_compute_illiquidity);

static void BM_aggregate_stock_day(benchmark::State& state) {
    SynthConfig cfg;
    cfg.n_stocks = 4;
    cfg.n_days = 1;
    cfg.snapshot_rate = 3;
    auto gt = plan_market(cfg);
    auto snaps = generate_day(gt, 0);
    for (auto _ : state) benchmark::DoNotOptimize(aggregate_day(snaps, 1));
    state.counters["snapshots/s"] =
        benchmark::Counter(double(snaps.size()), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_aggregate_stock_day)->Unit(benchmark::kMillisecond);

static void BM_generate_day(benchmark::State& state) {
    SynthConfig cfg;
    cfg.n_stocks = int(state.range(0));
    cfg.n_days = 1;
    cfg.crash_days = {0};
    auto gt = plan_market(cfg);
    for (auto _ : state) benchmark::DoNotOptimize(generate_day(gt, 0));
}
BENCHMARK(BM_generate_day)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_union_find_components(benchmark::State& state) {
    int n = int(state.range(0));
    Rng rng(9);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.next_double() < 4.0 / double(n)) edges.emplace_back(i, j);
    for (auto _ : state) {
        UnionFind uf(n);
        for (auto [a, b] : edges) uf.unite(a, b);
        benchmark::DoNotOptimize(uf.top_two_sizes());
    }
}
BENCHMARK(BM_union_find_components)->Arg(500)->Arg(2500);
