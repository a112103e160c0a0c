#pragma once

#include <cstddef>
#include <vector>

#include "cryptoarb/panel.hpp"

namespace cryptoarb {

// Crypto trades every day, so a year is 365 trading days.
inline constexpr double kTradingDaysPerYear = 365.0;
// Unit long plus unit short legs: returns are quoted on half the gross.
inline constexpr double kCapitalDivisor = 2.0;

struct PerformanceReport {
    double roc_pct = 0.0;  // annualized return on capital, percent
    double sharpe = 0.0;   // annualized; NaN when sharpe_defined is false
    bool sharpe_defined = false;
    std::size_t n_days = 0;
    double mean_daily_pnl = 0.0;
    double sd_daily_pnl = 0.0;  // sample (n-1) standard deviation
};

// mean(pnl) * 365 / 2 * 100.
double annualized_roc(const std::vector<double>& daily_pnl);

// mean(pnl) / sd(pnl) * sqrt(365); NaN when the sd is zero or n < 2.
double annualized_sharpe(const std::vector<double>& daily_pnl);

PerformanceReport performance_report(const std::vector<double>& daily_pnl);

// Running prefix sums over a series given oldest-first.
std::vector<double> cumulative_pnl(const std::vector<double>& daily_pnl);

struct SixNumberSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

// Quartiles by linear interpolation at h = 1 + (n-1)p; NaNs are dropped
// first. Throws DataError on an empty (or all-NaN) input.
SixNumberSummary six_number_summary(std::vector<double> values);

struct LiquiditySummary {
    SixNumberSummary cap;  // market cap on the most recent day
    SixNumberSummary adv;  // average daily dollar volume
    SixNumberSummary tvr;  // turnover: cap / adv, dimensionless
    std::size_t n_assets = 0;
    std::size_t adv_window = 20;
};

// Cross-sectional stats over the rows marked in `include`: cap is read from
// the newest column, ADV = mean dollar volume over the adv_window newest
// days, turnover = cap / ADV per asset. Included assets must have a finite
// cap and a positive ADV.
LiquiditySummary liquidity_stats(const PanelMatrix& volume, const PanelMatrix& cap,
                                 const std::vector<bool>& include, std::size_t adv_window);

}  // namespace cryptoarb
