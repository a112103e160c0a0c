#include "cryptoarb/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "cryptoarb/error.hpp"

namespace cryptoarb {

namespace {

std::string exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string two_dec(double v) {
    if (!std::isfinite(v)) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

const char* to_cstr(SignalMode m) {
    switch (m) {
        case SignalMode::kMeanReversion:
            return "mean-reversion";
        case SignalMode::kReversed:
            return "reversed";
        case SignalMode::kAlwaysOn:
            return "always-on";
    }
    return "?";
}

const char* to_cstr(WeightingScheme w) {
    switch (w) {
        case WeightingScheme::kEqual:
            return "equal";
        case WeightingScheme::kInverseVol:
            return "inverse-vol";
        case WeightingScheme::kMomOverVar:
            return "mom-over-var";
    }
    return "?";
}

const char* to_cstr(VolSource v) {
    switch (v) {
        case VolSource::kHlv:
            return "hlv";
        case VolSource::kRetSd:
            return "ret-sd";
    }
    return "?";
}

const char* to_cstr(ReturnMode r) {
    switch (r) {
        case ReturnMode::kClose:
            return "close";
        case ReturnMode::kOpenClose:
            return "open-close";
    }
    return "?";
}

// NaN is not representable in JSON; emit null instead.
nlohmann::ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

void write_pnl_csv(const BacktestResult& result, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "day_index,daily_pnl,cum_pnl\n";
    const std::size_t n = result.daily.size();
    // Rows run oldest-first; daily results are stored most-recent-first.
    for (std::size_t k = 0; k < n; ++k) {
        const auto& day = result.daily[n - 1 - k];
        out << k << ',' << exact(day.pnl) << ',' << exact(result.cum_pnl[k]) << '\n';
    }
    if (!out) throw DataError("write failed for " + path.string());
}

std::string render_report_json(const BacktestConfig& config, const BacktestResult& result) {
    nlohmann::ordered_json j;
    auto& cfg = j["config"];
    cfg["days"] = config.days;
    cfg["back"] = config.back;
    cfg["lookback"] = config.effective_lookback();
    cfg["d_r"] = config.d_r;
    cfg["d_v"] = config.d_v;
    cfg["d_i"] = config.d_i;
    cfg["rank_upper"] = config.tier.ix_upper;
    if (config.tier.ix_lower) {
        cfg["rank_lower"] = *config.tier.ix_lower;
    } else {
        cfg["rank_lower"] = nullptr;
    }
    cfg["signal_mode"] = to_cstr(config.signal_mode);
    cfg["weighting"] = to_cstr(config.weighting);
    cfg["vol_source"] = to_cstr(config.vol_source);
    cfg["return_mode"] = to_cstr(config.return_mode);
    cfg["btc_name"] = config.btc_name;
    cfg["exclusions"] = config.exclusions;
    cfg["charge_btc_on_empty"] = config.charge_btc_on_empty;

    auto& summary = j["summary"];
    summary["n_assets_input"] = result.summary.n_assets_input;
    summary["n_survivors_static"] = result.summary.n_survivors_static;
    summary["n_survivors_stale"] = result.summary.n_survivors_stale;
    summary["n_days"] = result.summary.n_days;
    summary["n_degenerate_days"] = result.summary.n_degenerate_days;

    auto& perf = j["performance"];
    perf["roc_pct"] = json_number(result.perf.roc_pct);
    perf["sharpe"] = json_number(result.perf.sharpe);
    perf["sharpe_defined"] = result.perf.sharpe_defined;
    perf["mean_daily_pnl"] = json_number(result.perf.mean_daily_pnl);
    perf["sd_daily_pnl"] = json_number(result.perf.sd_daily_pnl);
    perf["total_pnl"] = json_number(result.cum_pnl.empty() ? 0.0 : result.cum_pnl.back());

    j["warnings"] = result.warnings;
    return j.dump(2) + "\n";
}

std::string render_liquidity_json(const LiquiditySummary& summary) {
    nlohmann::ordered_json j;
    j["n_assets"] = summary.n_assets;
    j["adv_window"] = summary.adv_window;
    const auto block = [](const SixNumberSummary& s) {
        nlohmann::ordered_json b;
        b["min"] = json_number(s.min);
        b["q1"] = json_number(s.q1);
        b["median"] = json_number(s.median);
        b["mean"] = json_number(s.mean);
        b["q3"] = json_number(s.q3);
        b["max"] = json_number(s.max);
        return b;
    };
    j["cap"] = block(summary.cap);
    j["adv"] = block(summary.adv);
    j["tvr"] = block(summary.tvr);
    return j.dump(2) + "\n";
}

void write_report_json(const BacktestConfig& config, const BacktestResult& result,
                       const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << render_report_json(config, result);
    if (!out) throw DataError("write failed for " + path.string());
}

void print_performance(std::ostream& os, const BacktestResult& result) {
    os << "Days:       " << result.summary.n_days << "\n";
    os << "Assets:     " << result.summary.n_survivors_stale << " (of "
       << result.summary.n_assets_input << " input)\n";
    if (result.summary.n_degenerate_days > 0) {
        os << "Empty days: " << result.summary.n_degenerate_days << "\n";
    }
    os << "ROC (%):    " << two_dec(result.perf.roc_pct) << "\n";
    os << "Sharpe:     " << (result.perf.sharpe_defined ? two_dec(result.perf.sharpe) : "NA")
       << "\n";
}

namespace {

std::string sig3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

}  // namespace

void print_liquidity(std::ostream& os, const LiquiditySummary& summary) {
    const auto row = [&](const char* label, const SixNumberSummary& s) {
        os << label << "  min " << sig3(s.min) << "  q1 " << sig3(s.q1) << "  median "
           << sig3(s.median) << "  mean " << sig3(s.mean) << "  q3 " << sig3(s.q3) << "  max "
           << sig3(s.max) << "\n";
    };
    os << "Assets: " << summary.n_assets << "  (volume averaged over " << summary.adv_window
       << " days)\n";
    row("Cap ($):", summary.cap);
    row("ADV ($):", summary.adv);
    row("Tvr:    ", summary.tvr);
}

}  // namespace cryptoarb
