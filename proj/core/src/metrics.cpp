#include "cryptoarb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cryptoarb/error.hpp"

namespace cryptoarb {

namespace {

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

// Quantile with linear interpolation between order statistics at
// h = 1 + (n - 1) * p, the convention R and NumPy default to.
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = 1.0 + (static_cast<double>(n) - 1.0) * p;
    const double floor_h = std::floor(h);
    auto lo = static_cast<std::size_t>(floor_h);
    if (lo < 1) lo = 1;
    if (lo > n) lo = n;
    const std::size_t hi = lo < n ? lo + 1 : n;
    const double frac = h - floor_h;
    return sorted[lo - 1] + frac * (sorted[hi - 1] - sorted[lo - 1]);
}

}  // namespace

double annualized_roc(const std::vector<double>& daily_pnl) {
    if (daily_pnl.empty()) throw DataError("cannot annualize an empty series");
    return mean_of(daily_pnl) * kTradingDaysPerYear / kCapitalDivisor * 100.0;
}

double annualized_sharpe(const std::vector<double>& daily_pnl) {
    if (daily_pnl.empty()) throw DataError("cannot annualize an empty series");
    const double mean = mean_of(daily_pnl);
    const double sd = sample_sd(daily_pnl, mean);
    if (!(sd > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return mean / sd * std::sqrt(kTradingDaysPerYear);
}

PerformanceReport performance_report(const std::vector<double>& daily_pnl) {
    PerformanceReport rep;
    rep.n_days = daily_pnl.size();
    rep.mean_daily_pnl = mean_of(daily_pnl);
    rep.sd_daily_pnl = sample_sd(daily_pnl, rep.mean_daily_pnl);
    rep.roc_pct = annualized_roc(daily_pnl);
    rep.sharpe = annualized_sharpe(daily_pnl);
    rep.sharpe_defined = std::isfinite(rep.sharpe);
    return rep;
}

std::vector<double> cumulative_pnl(const std::vector<double>& daily_pnl) {
    std::vector<double> out(daily_pnl.size(), 0.0);
    double running = 0.0;
    for (std::size_t k = 0; k < daily_pnl.size(); ++k) {
        running += daily_pnl[k];
        out[k] = running;
    }
    return out;
}

SixNumberSummary six_number_summary(std::vector<double> values) {
    values.erase(std::remove_if(values.begin(), values.end(),
                                [](double v) { return std::isnan(v); }),
                 values.end());
    if (values.empty()) throw DataError("cannot summarize an empty sample");
    std::sort(values.begin(), values.end());
    SixNumberSummary s;
    s.min = values.front();
    s.max = values.back();
    s.mean = mean_of(values);
    s.q1 = quantile_sorted(values, 0.25);
    s.median = quantile_sorted(values, 0.5);
    s.q3 = quantile_sorted(values, 0.75);
    return s;
}

LiquiditySummary liquidity_stats(const PanelMatrix& volume, const PanelMatrix& cap,
                                 const std::vector<bool>& include, std::size_t adv_window) {
    if (!volume.same_shape(cap)) {
        throw DataError("panel shape mismatch in liquidity stats");
    }
    if (include.size() != volume.n_assets()) {
        throw DataError("inclusion mask size does not match the universe");
    }
    if (adv_window == 0 || adv_window > volume.n_dates()) {
        throw ConfigError("adv-window must be between 1 and the number of dates");
    }
    std::vector<double> caps;
    std::vector<double> advs;
    std::vector<double> tvrs;
    for (std::size_t i = 0; i < volume.n_assets(); ++i) {
        if (!include[i]) continue;
        const double c = cap(i, 0);
        double sum = 0.0;
        std::size_t n = 0;
        for (std::size_t s = 0; s < adv_window; ++s) {
            const double v = volume(i, s);
            if (PanelMatrix::is_missing(v)) continue;
            sum += v;
            ++n;
        }
        const double adv =
            n > 0 ? sum / static_cast<double>(n) : std::numeric_limits<double>::quiet_NaN();
        if (!std::isfinite(c) || !(adv > 0.0)) {
            throw DataError("liquidity stats need a finite cap and positive volume (row " +
                            std::to_string(i) + ")");
        }
        caps.push_back(c);
        advs.push_back(adv);
        tvrs.push_back(c / adv);
    }
    LiquiditySummary out;
    out.n_assets = caps.size();
    out.adv_window = adv_window;
    out.cap = six_number_summary(std::move(caps));
    out.adv = six_number_summary(std::move(advs));
    out.tvr = six_number_summary(std::move(tvrs));
    return out;
}

}  // namespace cryptoarb
