#include "cryptoarb/backtest.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "cryptoarb/error.hpp"

namespace cryptoarb {

WindowConfig BacktestConfig::window() const {
    WindowConfig w;
    w.days = days;
    w.back = back;
    w.lookback = effective_lookback();
    w.d_r = d_r;
    w.d_v = d_v;
    w.d_i = d_i;
    return w;
}

void BacktestConfig::validate() const {
    tier.validate();
    if (btc_name.empty()) throw ConfigError("short-leg asset name must not be empty");
    if (d_v == 0 || d_i == 0) throw ConfigError("averaging spans must be at least 1");
    const bool need_ret_sd =
        weighting != WeightingScheme::kEqual && vol_source == VolSource::kRetSd;
    if (need_ret_sd && d_i < 2) {
        throw ConfigError("return-sd volatility needs a span of at least 2 days");
    }
}

DailyPnl daily_pnl(const std::vector<double>& weights, const std::vector<double>& simple_ret,
                   std::size_t btc_index, bool charge_btc_on_empty) {
    if (weights.size() != simple_ret.size()) {
        throw DataError("weight and return size mismatch");
    }
    if (btc_index >= simple_ret.size()) throw DataError("short-leg index out of range");
    const double btc_ret = simple_ret[btc_index];
    if (!std::isfinite(btc_ret)) {
        throw DataError("non-finite short-leg return");
    }
    double gross = 0.0;
    double long_leg = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double w = weights[i];
        if (w == 0.0) continue;
        if (!std::isfinite(simple_ret[i])) {
            throw DataError("non-finite return under positive weight (row " +
                            std::to_string(i) + ")");
        }
        long_leg += w * simple_ret[i];
        gross += std::fabs(w);
    }
    DailyPnl out;
    if (gross == 0.0) {
        out.degenerate = true;
        out.pnl = charge_btc_on_empty ? -btc_ret : 0.0;
        return out;
    }
    out.pnl = long_leg - btc_ret;
    return out;
}

BacktestResult run_backtest(const MarketDataSet& data, const BacktestConfig& config,
                            RunDiagnostics* diag) {
    config.validate();
    const WindowConfig window = config.window();
    const bool need_ret_sd =
        config.weighting != WeightingScheme::kEqual && config.vol_source == VolSource::kRetSd;
    window.validate(data.close.n_dates(), need_ret_sd);
    if (data.names.size() != data.close.n_assets()) {
        throw DataError("name table size does not match the panels");
    }

    BacktestResult result;
    result.summary.n_assets_input = data.close.n_assets();

    // Selection window: the most recent days + d_r + 1 columns.
    const std::size_t d = window.padded_width();
    PanelMatrix close = data.close.first_cols(d);
    PanelMatrix open = data.open.first_cols(d);
    PanelMatrix high = data.high.first_cols(d);
    PanelMatrix low = data.low.first_cols(d);
    PanelMatrix volume = data.volume.first_cols(d);
    PanelMatrix cap = data.cap.first_cols(d);
    std::vector<std::string> names = data.names;

    // Keep only assets with complete, actively traded history.
    const StaticMask complete = static_filter(close, open, high, low, volume, cap);
    close = close.select_rows(complete.keep);
    open = open.select_rows(complete.keep);
    high = high.select_rows(complete.keep);
    low = low.select_rows(complete.keep);
    volume = volume.select_rows(complete.keep);
    cap = cap.select_rows(complete.keep);
    names = select_by_mask(names, complete.keep);
    result.summary.n_survivors_static = complete.n_kept;
    if (complete.n_kept == 0) throw DataError("no asset survives the history filter");

    std::vector<std::size_t> survivor_rows;
    for (std::size_t i = 0; i < complete.keep.size(); ++i) {
        if (complete.keep[i]) survivor_rows.push_back(i);
    }

    // Returns over the full selection window, then the one-day shift that
    // turns every other panel into prior-day information.
    ReturnsPanel rets = config.return_mode == ReturnMode::kClose
                            ? close_returns(close)
                            : open_close_returns(close, open);
    PanelMatrix prc_sh = shift_to_prior_day(close);
    PanelMatrix high_sh = shift_to_prior_day(high);
    PanelMatrix low_sh = shift_to_prior_day(low);
    PanelMatrix vol_sh = shift_to_prior_day(volume);
    PanelMatrix cap_sh = shift_to_prior_day(cap);

    if (window.back > 0) {
        rets.log_ret = rets.log_ret.drop_front_cols(window.back);
        rets.simple_ret = rets.simple_ret.drop_front_cols(window.back);
        prc_sh = prc_sh.drop_front_cols(window.back);
        high_sh = high_sh.drop_front_cols(window.back);
        low_sh = low_sh.drop_front_cols(window.back);
        vol_sh = vol_sh.drop_front_cols(window.back);
        cap_sh = cap_sh.drop_front_cols(window.back);
    }

    const std::size_t lookback = window.lookback;
    PanelMatrix hlv = hlv_factor(high_sh, low_sh, prc_sh, window.d_i, lookback);

    // Assets whose intraday range collapsed for a whole averaging window
    // were trading at stale prices; drop them outright.
    const StaticMask fresh = stale_filter(hlv);
    hlv = hlv.select_rows(fresh.keep);
    prc_sh = prc_sh.select_rows(fresh.keep);
    vol_sh = vol_sh.select_rows(fresh.keep);
    cap_sh = cap_sh.select_rows(fresh.keep);
    rets.log_ret = rets.log_ret.select_rows(fresh.keep);
    rets.simple_ret = rets.simple_ret.select_rows(fresh.keep);
    cap = cap.select_rows(fresh.keep);
    names = select_by_mask(names, fresh.keep);
    survivor_rows = select_by_mask(survivor_rows, fresh.keep);
    result.summary.n_survivors_stale = fresh.n_kept;
    if (fresh.n_kept == 0) throw DataError("no asset survives the stale-price filter");

    const PanelMatrix mom = mom_factor(prc_sh, lookback);
    const PanelMatrix size = size_factor(cap_sh, lookback);
    const PanelMatrix sigma_sd =
        need_ret_sd ? trailing_return_sd(rets.log_ret, window.d_i, lookback) : PanelMatrix{};
    const PanelMatrix simple_ret = rets.simple_ret.first_cols(lookback);

    const std::size_t btc = locate_bitcoin(names, cap, config.btc_name, &result.warnings);

    const bool long_window = lookback >= kDefaultExclusionMinLookback;
    const auto user_allowed = apply_exclusions(names, config.exclusions, true);
    const auto default_allowed = apply_exclusions(names, config.default_exclusions, long_window);
    std::vector<bool> allowed(names.size(), true);
    for (std::size_t i = 0; i < names.size(); ++i) {
        allowed[i] = user_allowed[i] && default_allowed[i];
    }

    const DailyUniverse universe = build_daily_universe(size, config.tier, allowed, btc);

    if (diag) {
        diag->survivor_rows = survivor_rows;
        diag->btc_index = btc;
        diag->weights.assign(lookback, {});
        diag->eligible = universe.eligible;
        diag->mom = mom;
        diag->simple_ret = simple_ret;
    }

    result.daily.resize(lookback);
    std::vector<double> pnl_series(lookback, 0.0);
    std::vector<double> vol_col;
    for (std::size_t s = 0; s < lookback; ++s) {
        const std::vector<double> mom_col = mom.col(s);
        const std::vector<double> signal = raw_signal(mom_col, config.signal_mode);
        if (config.weighting != WeightingScheme::kEqual) {
            vol_col.resize(names.size());
            for (std::size_t i = 0; i < names.size(); ++i) {
                vol_col[i] = config.vol_source == VolSource::kHlv ? std::exp(hlv(i, s))
                                                                  : sigma_sd(i, s);
            }
        }
        const WeightVector weights =
            build_weights(signal, universe.eligible[s], config.weighting, vol_col, mom_col);

        DailyPnl day = daily_pnl(weights.w, simple_ret.col(s), btc, config.charge_btc_on_empty);
        if (!std::isfinite(day.pnl)) {
            result.warnings.push_back("non-finite profit on day " + std::to_string(s) +
                                      "; forced to zero");
            day.pnl = 0.0;
        }

        auto& rec = result.daily[s];
        rec.day_index = s;
        rec.pnl = day.pnl;
        rec.degenerate = day.degenerate;
        rec.n_signals = weights.n_signals;
        for (bool e : universe.eligible[s]) rec.n_eligible += e ? 1 : 0;
        if (day.degenerate) ++result.summary.n_degenerate_days;
        pnl_series[s] = day.pnl;
        if (diag) diag->weights[s] = weights.w;
    }

    result.summary.n_days = lookback;
    std::vector<double> oldest_first(pnl_series.rbegin(), pnl_series.rend());
    result.cum_pnl = cumulative_pnl(oldest_first);
    result.perf = performance_report(pnl_series);
    return result;
}

}  // namespace cryptoarb
