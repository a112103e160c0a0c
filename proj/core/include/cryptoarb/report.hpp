#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "cryptoarb/backtest.hpp"
#include "cryptoarb/metrics.hpp"

namespace cryptoarb {

// day_index,daily_pnl,cum_pnl rows, day_index 0 = oldest day. Doubles are
// written round-trip exact so reruns are byte-identical.
void write_pnl_csv(const BacktestResult& result, const std::filesystem::path& path);

// Machine-readable run report with config echo, summary counts, and the
// performance block. Deterministic key order, no timestamps.
std::string render_report_json(const BacktestConfig& config, const BacktestResult& result);

void write_report_json(const BacktestConfig& config, const BacktestResult& result,
                       const std::filesystem::path& path);

std::string render_liquidity_json(const LiquiditySummary& summary);

// Console blocks.
void print_performance(std::ostream& os, const BacktestResult& result);
void print_liquidity(std::ostream& os, const LiquiditySummary& summary);

}  // namespace cryptoarb
