#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cryptoarb/factors.hpp"
#include "cryptoarb/ingest.hpp"
#include "cryptoarb/metrics.hpp"
#include "cryptoarb/panel.hpp"
#include "cryptoarb/portfolio.hpp"
#include "cryptoarb/universe.hpp"

namespace cryptoarb {

enum class ReturnMode {
    kClose,      // close-to-close daily returns
    kOpenClose,  // open-to-close daily returns
};

enum class VolSource {
    kHlv,    // intraday high-low volatility factor
    kRetSd,  // trailing standard deviation of close-to-close returns
};

// Asset excluded by default from windows longer than a year; the stored
// name is truncated in the source data, so the match is exact-text.
inline constexpr const char* kDefaultExcludedAsset = "Circuits of V...";
inline constexpr std::size_t kDefaultExclusionMinLookback = 366;

struct BacktestConfig {
    std::size_t days = 365;
    std::size_t back = 0;
    std::optional<std::size_t> lookback;  // defaults to `days`
    std::size_t d_r = 20;
    std::size_t d_v = 20;
    std::size_t d_i = 20;
    TierSpec tier;
    SignalMode signal_mode = SignalMode::kMeanReversion;
    WeightingScheme weighting = WeightingScheme::kEqual;
    VolSource vol_source = VolSource::kHlv;
    ReturnMode return_mode = ReturnMode::kClose;
    std::string btc_name = "Bitcoin";
    std::vector<std::string> exclusions;  // always applied when present
    // Applied only when the lookback exceeds a year.
    std::vector<std::string> default_exclusions = {kDefaultExcludedAsset};
    bool charge_btc_on_empty = false;  // pay the short leg on signal-less days

    std::size_t effective_lookback() const { return lookback.value_or(days); }
    WindowConfig window() const;
    void validate() const;  // knob sanity only; history checks live in WindowConfig
};

struct DailyResult {
    std::size_t day_index = 0;  // 0 = most recent simulated day
    double pnl = 0.0;
    std::size_t n_eligible = 0;
    std::size_t n_signals = 0;
    bool degenerate = false;  // no signal survived; pnl forced per config
};

struct RunSummary {
    std::size_t n_assets_input = 0;
    std::size_t n_survivors_static = 0;
    std::size_t n_survivors_stale = 0;
    std::size_t n_days = 0;
    std::size_t n_degenerate_days = 0;
};

struct BacktestResult {
    std::vector<DailyResult> daily;  // most recent first
    std::vector<double> cum_pnl;     // oldest first
    PerformanceReport perf;
    RunSummary summary;
    std::vector<std::string> warnings;

    double roc_pct() const { return perf.roc_pct; }
    double sharpe() const { return perf.sharpe; }
};

// Intermediate state exposed for tests and diagnostics.
struct RunDiagnostics {
    std::vector<std::size_t> survivor_rows;       // original row index per survivor
    std::size_t btc_index = 0;                    // within survivors
    std::vector<std::vector<double>> weights;     // [day][survivor]
    std::vector<std::vector<bool>> eligible;      // [day][survivor]
    PanelMatrix mom;
    PanelMatrix simple_ret;
};

struct DailyPnl {
    double pnl = 0.0;
    bool degenerate = false;
};

// One day's long-altcoin / short-Bitcoin return. Throws DataError on a
// non-finite return under positive weight or a non-finite Bitcoin return.
DailyPnl daily_pnl(const std::vector<double>& weights, const std::vector<double>& simple_ret,
                   std::size_t btc_index, bool charge_btc_on_empty);

// Runs the full pipeline: filter -> factors -> daily weights -> pnl series
// -> performance. `diag`, when non-null, receives the intermediate state.
BacktestResult run_backtest(const MarketDataSet& data, const BacktestConfig& config,
                            RunDiagnostics* diag = nullptr);

}  // namespace cryptoarb
