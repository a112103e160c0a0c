#include <benchmark/benchmark.h>

#include <cstddef>
#include <random>

#include "cryptoarb/backtest.hpp"
#include "cryptoarb/factors.hpp"
#include "support/dataset_builders.hpp"
#include "support/random_dataset.hpp"

namespace {

cryptoarb::MarketDataSet make_data(std::size_t assets, std::size_t dates, unsigned seed) {
    std::mt19937_64 rng(seed);
    return testsupport::to_market_data(testsupport::random_inputs(rng, assets, dates, false));
}

void BM_BacktestSmall(benchmark::State& state) {
    const auto data = make_data(100, 100, 1);
    cryptoarb::BacktestConfig cfg;
    cfg.days = 80;
    cfg.d_r = 10;
    cfg.lookback = 60;
    for (auto _ : state) {
        const auto res = cryptoarb::run_backtest(data, cfg);
        benchmark::DoNotOptimize(res.perf.roc_pct);
    }
}

void BM_BacktestMid(benchmark::State& state) {
    const auto data = make_data(500, 200, 2);
    cryptoarb::BacktestConfig cfg;
    cfg.days = 150;
    cfg.lookback = 120;
    for (auto _ : state) {
        const auto res = cryptoarb::run_backtest(data, cfg);
        benchmark::DoNotOptimize(res.perf.roc_pct);
    }
}

void BM_BacktestFullUniverse(benchmark::State& state) {
    const auto data = make_data(2115, 400, 3);
    const cryptoarb::BacktestConfig cfg;  // one-year defaults
    for (auto _ : state) {
        const auto res = cryptoarb::run_backtest(data, cfg);
        benchmark::DoNotOptimize(res.perf.roc_pct);
    }
}

void BM_IntradayVolFactor(benchmark::State& state) {
    const auto data = make_data(2115, 400, 4);
    const auto high = cryptoarb::shift_to_prior_day(data.high.first_cols(386));
    const auto low = cryptoarb::shift_to_prior_day(data.low.first_cols(386));
    const auto close = cryptoarb::shift_to_prior_day(data.close.first_cols(386));
    for (auto _ : state) {
        const auto hlv = cryptoarb::hlv_factor(high, low, close, 20, 365);
        benchmark::DoNotOptimize(hlv(0, 0));
    }
}

}  // namespace

BENCHMARK(BM_BacktestSmall)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BacktestMid)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BacktestFullUniverse)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IntradayVolFactor)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
