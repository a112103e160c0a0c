#pragma once

#include <cstddef>
#include <vector>

#include "cryptoarb/panel.hpp"

namespace cryptoarb {

// Window geometry of a run. The raw panels are first truncated to
// padded_width() columns; after the one-day shift and the back-skip the
// usable width is padded_width() - 1 - back.
struct WindowConfig {
    std::size_t days = 365;      // trading days in the simulation
    std::size_t back = 0;        // most recent days to skip entirely
    std::size_t lookback = 365;  // trailing window for factor estimation
    std::size_t d_r = 20;        // extra return-history padding
    std::size_t d_v = 20;        // volume-average span
    std::size_t d_i = 20;        // intraday-volatility span

    std::size_t padded_width() const { return days + d_r + 1; }

    // Throws ConfigError when the knobs are internally inconsistent and
    // DataError when n_dates cannot support them.
    void validate(std::size_t n_dates, bool need_ret_sd) const;
};

// Log and simple close-to-close returns plus the one-day-shifted panels the
// factors are computed from.
struct ReturnsPanel {
    PanelMatrix log_ret;     // column s = ln(prc[s] / prc[s+1])
    PanelMatrix simple_ret;  // column s = prc[s] / prc[s+1] - 1
};

struct FactorSet {
    PanelMatrix mom;   // trailing one-day momentum, `lookback` columns
    PanelMatrix hlv;   // log intraday volatility, `lookback` columns
    PanelMatrix av;    // log average volume, `lookback` columns
    PanelMatrix size;  // log market cap, `lookback` columns
};

// Shifts every column one day into the past: out[s] = in[s+1]. The shifted
// panel has one fewer column and holds only information that was known
// before the day it is used on.
PanelMatrix shift_to_prior_day(const PanelMatrix& panel);

// Close-to-close returns from an unshifted close panel. Throws DataError on
// non-positive prices; missing cells propagate as NaN.
ReturnsPanel close_returns(const PanelMatrix& close);

// Open-to-close variant: log_ret[s] = ln(close[s] / open[s]).
ReturnsPanel open_close_returns(const PanelMatrix& close, const PanelMatrix& open);

// Rolling mean over `span` trailing columns, skipping NaNs; keeps the first
// `out_cols` columns. A window with no finite value yields NaN. span == 1
// returns the first out_cols columns verbatim.
PanelMatrix trailing_mean(const PanelMatrix& panel, std::size_t span, std::size_t out_cols);

// mom[s] = ln(prc_shifted[s] / prc_shifted[s+1]); first `lookback` columns.
PanelMatrix mom_factor(const PanelMatrix& shifted_close, std::size_t lookback);

// hlv[s] = 0.5 * ln(mean over d_i of ((high-low)/close)^2), on shifted panels.
PanelMatrix hlv_factor(const PanelMatrix& shifted_high, const PanelMatrix& shifted_low,
                       const PanelMatrix& shifted_close, std::size_t d_i, std::size_t lookback);

// av[s] = ln(mean over d_v of volume), on the shifted volume panel.
PanelMatrix av_factor(const PanelMatrix& shifted_volume, std::size_t d_v, std::size_t lookback);

// size[s] = ln(cap), first `lookback` columns of the shifted cap panel.
PanelMatrix size_factor(const PanelMatrix& shifted_cap, std::size_t lookback);

// Sample standard deviation of the log returns in columns s+1 .. s+span of
// an unshifted return panel; an alternative volatility source to hlv.
PanelMatrix trailing_return_sd(const PanelMatrix& log_ret, std::size_t span,
                               std::size_t out_cols);

}  // namespace cryptoarb
