#include "cryptoarb/factors.hpp"

#include <cmath>
#include <string>

#include "cryptoarb/error.hpp"

namespace cryptoarb {

namespace {

// Log of a price-like cell: NaN propagates, non-positive finite values are a
// data defect (logs and ratios would silently go non-finite mid-pipeline).
double checked_log(double v, const char* what) {
    if (PanelMatrix::is_missing(v)) return PanelMatrix::missing_value();
    if (v <= 0.0) {
        throw DataError(std::string(what) + " must be positive, got " + std::to_string(v));
    }
    return std::log(v);
}

void check_positive(double v, const char* what) {
    if (!PanelMatrix::is_missing(v) && v <= 0.0) {
        throw DataError(std::string(what) + " must be positive, got " + std::to_string(v));
    }
}

}  // namespace

void WindowConfig::validate(std::size_t n_dates, bool need_ret_sd) const {
    if (days == 0) throw ConfigError("days must be at least 1");
    if (lookback == 0) throw ConfigError("lookback must be at least 1");
    if (lookback > days) {
        throw ConfigError("lookback " + std::to_string(lookback) + " exceeds days " +
                          std::to_string(days));
    }
    if (back >= days + d_r) {
        throw ConfigError("back " + std::to_string(back) + " leaves no usable history");
    }
    // Width of the shifted, back-skipped panels the factors are cut from.
    const std::size_t usable = padded_width() - 1 - back;
    const auto need = [&](std::size_t cols, const char* what) {
        if (cols > usable) {
            throw ConfigError(std::string(what) + " needs " + std::to_string(cols) +
                              " shifted columns but only " + std::to_string(usable) +
                              " are available; increase --dr or shrink the spans");
        }
    };
    need(lookback + d_v - 1, "volume averaging");
    need(lookback + d_i - 1, "intraday volatility");
    need(lookback + 1, "momentum");
    if (need_ret_sd) need(lookback + d_i, "return-sd volatility");
    if (n_dates < padded_width()) {
        throw DataError("insufficient history: need " + std::to_string(padded_width()) +
                        " dates, have " + std::to_string(n_dates));
    }
}

PanelMatrix shift_to_prior_day(const PanelMatrix& panel) {
    if (panel.n_dates() < 1) throw DataError("cannot shift an empty panel");
    return panel.drop_front_cols(1);
}

ReturnsPanel close_returns(const PanelMatrix& close) {
    if (close.n_dates() < 2) throw DataError("need at least two dates for returns");
    const std::size_t cols = close.n_dates() - 1;
    ReturnsPanel out{PanelMatrix(close.n_assets(), cols), PanelMatrix(close.n_assets(), cols)};
    for (std::size_t i = 0; i < close.n_assets(); ++i) {
        for (std::size_t s = 0; s < cols; ++s) {
            const double now = close(i, s);
            const double prev = close(i, s + 1);
            check_positive(now, "close price");
            check_positive(prev, "close price");
            if (PanelMatrix::is_missing(now) || PanelMatrix::is_missing(prev)) continue;
            out.log_ret(i, s) = std::log(now / prev);
            out.simple_ret(i, s) = now / prev - 1.0;
        }
    }
    return out;
}

ReturnsPanel open_close_returns(const PanelMatrix& close, const PanelMatrix& open) {
    if (!close.same_shape(open)) throw DataError("close/open shape mismatch");
    if (close.n_dates() < 2) throw DataError("need at least two dates for returns");
    // Same column count as the close-to-close panel so the day alignment and
    // history bookkeeping are unchanged; the oldest column is simply unused.
    const std::size_t cols = close.n_dates() - 1;
    ReturnsPanel out{PanelMatrix(close.n_assets(), cols), PanelMatrix(close.n_assets(), cols)};
    for (std::size_t i = 0; i < close.n_assets(); ++i) {
        for (std::size_t s = 0; s < cols; ++s) {
            const double c = close(i, s);
            const double o = open(i, s);
            check_positive(c, "close price");
            check_positive(o, "open price");
            if (PanelMatrix::is_missing(c) || PanelMatrix::is_missing(o)) continue;
            out.log_ret(i, s) = std::log(c / o);
            out.simple_ret(i, s) = c / o - 1.0;
        }
    }
    return out;
}

PanelMatrix trailing_mean(const PanelMatrix& panel, std::size_t span, std::size_t out_cols) {
    if (span == 0) throw ConfigError("trailing mean span must be at least 1");
    if (out_cols + span - 1 > panel.n_dates()) {
        throw DataError("trailing mean needs " + std::to_string(out_cols + span - 1) +
                        " columns, panel has " + std::to_string(panel.n_dates()));
    }
    if (span == 1) return panel.first_cols(out_cols);
    PanelMatrix out(panel.n_assets(), out_cols);
    for (std::size_t i = 0; i < panel.n_assets(); ++i) {
        for (std::size_t s = 0; s < out_cols; ++s) {
            double sum = 0.0;
            std::size_t n = 0;
            for (std::size_t k = 0; k < span; ++k) {
                const double v = panel(i, s + k);
                if (PanelMatrix::is_missing(v)) continue;
                sum += v;
                ++n;
            }
            if (n > 0) out(i, s) = sum / static_cast<double>(n);
        }
    }
    return out;
}

PanelMatrix mom_factor(const PanelMatrix& shifted_close, std::size_t lookback) {
    if (lookback + 1 > shifted_close.n_dates()) {
        throw DataError("momentum needs " + std::to_string(lookback + 1) + " columns, have " +
                        std::to_string(shifted_close.n_dates()));
    }
    PanelMatrix out(shifted_close.n_assets(), lookback);
    for (std::size_t i = 0; i < shifted_close.n_assets(); ++i) {
        for (std::size_t s = 0; s < lookback; ++s) {
            const double now = shifted_close(i, s);
            const double prev = shifted_close(i, s + 1);
            check_positive(now, "close price");
            check_positive(prev, "close price");
            if (PanelMatrix::is_missing(now) || PanelMatrix::is_missing(prev)) continue;
            out(i, s) = std::log(now / prev);
        }
    }
    return out;
}

PanelMatrix hlv_factor(const PanelMatrix& shifted_high, const PanelMatrix& shifted_low,
                       const PanelMatrix& shifted_close, std::size_t d_i, std::size_t lookback) {
    if (!shifted_high.same_shape(shifted_low) || !shifted_high.same_shape(shifted_close)) {
        throw DataError("high/low/close shape mismatch");
    }
    PanelMatrix range_sq(shifted_high.n_assets(), shifted_high.n_dates());
    for (std::size_t i = 0; i < shifted_high.n_assets(); ++i) {
        for (std::size_t s = 0; s < shifted_high.n_dates(); ++s) {
            const double hi = shifted_high(i, s);
            const double lo = shifted_low(i, s);
            const double cl = shifted_close(i, s);
            check_positive(cl, "close price");
            if (PanelMatrix::is_missing(hi) || PanelMatrix::is_missing(lo) ||
                PanelMatrix::is_missing(cl)) {
                continue;
            }
            const double rel = (hi - lo) / cl;
            range_sq(i, s) = rel * rel;
        }
    }
    PanelMatrix mean_sq = trailing_mean(range_sq, d_i, lookback);
    PanelMatrix out(mean_sq.n_assets(), mean_sq.n_dates());
    for (std::size_t i = 0; i < out.n_assets(); ++i) {
        for (std::size_t s = 0; s < out.n_dates(); ++s) {
            const double m = mean_sq(i, s);
            if (PanelMatrix::is_missing(m)) continue;
            // A zero mean range is a legal value and maps to -inf, which the
            // stale-price filter later removes.
            out(i, s) = 0.5 * std::log(m);
        }
    }
    return out;
}

PanelMatrix av_factor(const PanelMatrix& shifted_volume, std::size_t d_v, std::size_t lookback) {
    PanelMatrix mean_vol = trailing_mean(shifted_volume, d_v, lookback);
    PanelMatrix out(mean_vol.n_assets(), mean_vol.n_dates());
    for (std::size_t i = 0; i < out.n_assets(); ++i) {
        for (std::size_t s = 0; s < out.n_dates(); ++s) {
            const double m = mean_vol(i, s);
            if (PanelMatrix::is_missing(m)) continue;
            out(i, s) = std::log(m);
        }
    }
    return out;
}

PanelMatrix size_factor(const PanelMatrix& shifted_cap, std::size_t lookback) {
    if (lookback > shifted_cap.n_dates()) {
        throw DataError("size factor needs " + std::to_string(lookback) + " columns, have " +
                        std::to_string(shifted_cap.n_dates()));
    }
    PanelMatrix out(shifted_cap.n_assets(), lookback);
    for (std::size_t i = 0; i < out.n_assets(); ++i) {
        for (std::size_t s = 0; s < lookback; ++s) {
            out(i, s) = checked_log(shifted_cap(i, s), "market cap");
        }
    }
    return out;
}

PanelMatrix trailing_return_sd(const PanelMatrix& log_ret, std::size_t span,
                               std::size_t out_cols) {
    if (span < 2) throw ConfigError("return-sd span must be at least 2");
    if (out_cols + span > log_ret.n_dates()) {
        throw DataError("return-sd needs " + std::to_string(out_cols + span) +
                        " return columns, have " + std::to_string(log_ret.n_dates()));
    }
    PanelMatrix out(log_ret.n_assets(), out_cols);
    for (std::size_t i = 0; i < log_ret.n_assets(); ++i) {
        for (std::size_t s = 0; s < out_cols; ++s) {
            // Returns strictly before day s: columns s+1 .. s+span.
            double sum = 0.0;
            std::size_t n = 0;
            for (std::size_t k = 1; k <= span; ++k) {
                const double v = log_ret(i, s + k);
                if (PanelMatrix::is_missing(v)) continue;
                sum += v;
                ++n;
            }
            if (n < 2) continue;
            const double mean = sum / static_cast<double>(n);
            double ss = 0.0;
            for (std::size_t k = 1; k <= span; ++k) {
                const double v = log_ret(i, s + k);
                if (PanelMatrix::is_missing(v)) continue;
                ss += (v - mean) * (v - mean);
            }
            out(i, s) = std::sqrt(ss / static_cast<double>(n - 1));
        }
    }
    return out;
}

}  // namespace cryptoarb
