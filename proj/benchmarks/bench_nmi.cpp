#include <benchmark/benchmark.h>

#include <vector>

#include "illiqnet/dependency_network.hpp"
#include "illiqnet/rng.hpp"

using namespace illiqnet;

namespace {

std::vector<DiscreteSeries> random_series(int n, int len, int bins, uint64_t seed) {
    Rng rng(seed);
    std::vector<DiscreteSeries> out;
    out.reserve(size_t(n));
    for (int i = 0; i < n; ++i) {
        DiscreteSeries d;
        d.stock_id = "S" + std::to_string(i);
        d.bins = bins;
        d.symbols.resize(size_t(len));
        for (auto& s : d.symbols) s = uint8_t(rng.next_below(uint64_t(bins)));
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace

static void BM_nmi_single_pair(benchmark::State& state) {
    auto series = random_series(2, 237, 16, 1);
    for (auto _ : state) benchmark::DoNotOptimize(nmi(series[0], series[1]));
}
BENCHMARK(BM_nmi_single_pair);

static void BM_pairwise_nmi(benchmark::State& state) {
    int n = int(state.range(0));
    int workers = int(state.range(1));
    auto series = random_series(n, 237, 16, 2);
    for (auto _ : state) {
        auto m = pairwise_nmi(series, "2015-06-26", workers);
        benchmark::DoNotOptimize(m.tri.data());
    }
    state.counters["pairs/s"] = benchmark::Counter(
        double(n) * (n - 1) / 2, benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_pairwise_nmi)->Args({250, 1})->Args({250, 2})->Args({1000, 1})->Args({1000, 2})
    ->Unit(benchmark::kMillisecond);

static void BM_discretize(benchmark::State& state) {
    Rng rng(3);
    IlliquiditySeries s("S", "2015-06-26");
    for (auto& slot : s.slots) {
        slot.state = LiquidityState::Quoted;
        slot.value = rng.normal();
    }
    for (auto _ : state) benchmark::DoNotOptimize(discretize(s, 16));
}
BENCHMARK(BM_discretize);

static void BM_select_threshold(benchmark::State& state) {
    int n = int(state.range(0));
    Rng rng(4);
    DependencyMatrix m;
    m.date = "2015-06-26";
    for (int i = 0; i < n; ++i) m.stocks.push_back("S" + std::to_string(i));
    m.tri.resize(size_t(n) * (n - 1) / 2);
    for (auto& v : m.tri) v = float(rng.next_double());
    for (auto _ : state) benchmark::DoNotOptimize(select_threshold(m, 0.01).threshold);
}
BENCHMARK(BM_select_threshold)->Arg(500)->Arg(2500)->Unit(benchmark::kMillisecond);
