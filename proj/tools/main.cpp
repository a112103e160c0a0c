// Command-line driver: backtests a daily long-altcoin / short-Bitcoin
// mean-reversion strategy over tab-separated price history, or summarizes
// the liquidity of the traded universe.

#include <cstddef>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cryptoarb/backtest.hpp"
#include "cryptoarb/error.hpp"
#include "cryptoarb/ingest.hpp"
#include "cryptoarb/metrics.hpp"
#include "cryptoarb/report.hpp"

namespace {

constexpr const char* kVersion = "cryptoarb 0.1.0";

struct CliOptions {
    std::string data_dir;
    bool header = false;

    cryptoarb::BacktestConfig config;
    std::optional<std::size_t> lookback;
    std::optional<std::size_t> rank_lower;

    std::string pnl_out;
    std::string report_out;

    std::size_t adv_window = 20;
    bool include_btc = false;
};

void add_data_options(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--data-dir", opts.data_dir, "Directory with the cr.*.txt files")
        ->required();
    cmd->add_flag("--header", opts.header, "Skip one header line in every data file");
}

void add_window_options(CLI::App* cmd, CliOptions& opts) {
    auto& cfg = opts.config;
    cmd->add_option("--days", cfg.days, "Selection-period length in days")
        ->capture_default_str();
    cmd->add_option("--back", cfg.back, "Most recent days to skip")->capture_default_str();
    cmd->add_option("--lookback", opts.lookback,
                    "Days to simulate (default: same as --days)");
    cmd->add_option("--dr", cfg.d_r, "Extra history padding in days")->capture_default_str();
    cmd->add_option("--dv", cfg.d_v, "Volume moving-average span")->capture_default_str();
    cmd->add_option("--di", cfg.d_i, "Intraday-volatility moving-average span")
        ->capture_default_str();
    cmd->add_option("--rank-upper", cfg.tier.ix_upper,
                    "Highest cap rank admitted to the long side")
        ->capture_default_str();
    cmd->add_option("--rank-lower", opts.rank_lower,
                    "Lowest cap rank admitted (omit for no lower bound)");
    cmd->add_option("--exclude", cfg.exclusions, "Asset name to exclude (repeatable)")
        ->take_all();
    cmd->add_option("--btc-name", cfg.btc_name, "Name of the short-leg asset")
        ->capture_default_str();
}

void add_strategy_options(CLI::App* cmd, CliOptions& opts) {
    auto& cfg = opts.config;
    const std::map<std::string, cryptoarb::SignalMode> signal_modes{
        {"mean-reversion", cryptoarb::SignalMode::kMeanReversion},
        {"reversed", cryptoarb::SignalMode::kReversed},
        {"always-on", cryptoarb::SignalMode::kAlwaysOn},
    };
    const std::map<std::string, cryptoarb::WeightingScheme> weightings{
        {"equal", cryptoarb::WeightingScheme::kEqual},
        {"inverse-vol", cryptoarb::WeightingScheme::kInverseVol},
        {"mom-over-var", cryptoarb::WeightingScheme::kMomOverVar},
    };
    const std::map<std::string, cryptoarb::VolSource> vol_sources{
        {"hlv", cryptoarb::VolSource::kHlv},
        {"ret-sd", cryptoarb::VolSource::kRetSd},
    };
    const std::map<std::string, cryptoarb::ReturnMode> return_modes{
        {"close", cryptoarb::ReturnMode::kClose},
        {"open-close", cryptoarb::ReturnMode::kOpenClose},
    };
    cmd->add_option("--signal-mode", cfg.signal_mode, "Trading signal direction")
        ->transform(CLI::CheckedTransformer(signal_modes, CLI::ignore_case))
        ->default_str("mean-reversion");
    cmd->add_option("--weighting", cfg.weighting, "Signal weighting scheme")
        ->transform(CLI::CheckedTransformer(weightings, CLI::ignore_case))
        ->default_str("equal");
    cmd->add_option("--vol-source", cfg.vol_source, "Volatility estimate for weighting")
        ->transform(CLI::CheckedTransformer(vol_sources, CLI::ignore_case))
        ->default_str("hlv");
    cmd->add_option("--return-mode", cfg.return_mode, "Daily return definition")
        ->transform(CLI::CheckedTransformer(return_modes, CLI::ignore_case))
        ->default_str("close");
    cmd->add_flag("--charge-btc-on-empty", cfg.charge_btc_on_empty,
                  "Pay the Bitcoin short leg on days with no long signal");
}

cryptoarb::BacktestConfig finalize_config(CliOptions& opts) {
    opts.config.lookback = opts.lookback;
    opts.config.tier.ix_lower = opts.rank_lower;
    return opts.config;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int run_backtest_command(CliOptions& opts) {
    const cryptoarb::BacktestConfig config = finalize_config(opts);
    const cryptoarb::LoadedDataset loaded = cryptoarb::load_dataset(opts.data_dir, opts.header);
    print_warnings(loaded.report.warnings);

    const cryptoarb::BacktestResult result = cryptoarb::run_backtest(loaded.data, config);
    print_warnings(result.warnings);
    cryptoarb::print_performance(std::cout, result);

    if (!opts.pnl_out.empty()) cryptoarb::write_pnl_csv(result, opts.pnl_out);
    if (!opts.report_out.empty()) cryptoarb::write_report_json(config, result, opts.report_out);
    return 0;
}

int run_stats_command(CliOptions& opts) {
    const cryptoarb::BacktestConfig config = finalize_config(opts);
    const cryptoarb::LoadedDataset loaded = cryptoarb::load_dataset(opts.data_dir, opts.header);
    print_warnings(loaded.report.warnings);

    // Reuse the backtest pipeline to get the filtered universe and the
    // most recent day's cap tier.
    cryptoarb::RunDiagnostics diag;
    const cryptoarb::BacktestResult result = cryptoarb::run_backtest(loaded.data, config, &diag);
    print_warnings(result.warnings);

    std::vector<bool> survivor(loaded.data.close.n_assets(), false);
    for (std::size_t row : diag.survivor_rows) survivor[row] = true;
    const std::size_t width = config.window().padded_width();
    const cryptoarb::PanelMatrix volume =
        loaded.data.volume.first_cols(width).select_rows(survivor);
    const cryptoarb::PanelMatrix cap = loaded.data.cap.first_cols(width).select_rows(survivor);

    std::vector<bool> include = diag.eligible.front();
    if (opts.include_btc) include[diag.btc_index] = true;

    const cryptoarb::LiquiditySummary summary =
        cryptoarb::liquidity_stats(volume, cap, include, opts.adv_window);
    cryptoarb::print_liquidity(std::cout, summary);

    if (!opts.report_out.empty()) {
        std::ofstream out(opts.report_out);
        if (!out) throw cryptoarb::DataError("cannot write " + opts.report_out);
        out << cryptoarb::render_liquidity_json(summary);
    }
    return 0;
}

int run_validate_command(CliOptions& opts) {
    const cryptoarb::BacktestConfig config = finalize_config(opts);
    config.validate();
    const cryptoarb::LoadedDataset loaded = cryptoarb::load_dataset(opts.data_dir, opts.header);
    print_warnings(loaded.report.warnings);

    const bool need_ret_sd = config.weighting != cryptoarb::WeightingScheme::kEqual &&
                             config.vol_source == cryptoarb::VolSource::kRetSd;
    config.window().validate(loaded.report.n_dates, need_ret_sd);

    std::cout << "Assets: " << loaded.report.n_assets << "\n";
    std::cout << "Dates:  " << loaded.report.n_dates << "\n";
    for (const auto& [file, count] : loaded.report.missing_cells) {
        std::cout << "Missing in " << file << ": " << count << "\n";
    }
    std::cout << "OK\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Daily long-altcoin / short-Bitcoin mean-reversion backtester"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CliOptions opts;

    CLI::App* backtest = app.add_subcommand("backtest", "Run the strategy and report ROC/Sharpe");
    add_data_options(backtest, opts);
    add_window_options(backtest, opts);
    add_strategy_options(backtest, opts);
    backtest->add_option("--pnl-out", opts.pnl_out, "Write the daily P&L series as CSV");
    backtest->add_option("--report-out", opts.report_out, "Write a JSON run report");

    CLI::App* stats = app.add_subcommand("stats", "Summarize cap, ADV, and turnover of the universe");
    add_data_options(stats, opts);
    add_window_options(stats, opts);
    stats->add_option("--adv-window", opts.adv_window, "Days in the volume average")
        ->capture_default_str();
    stats->add_flag("--include-btc", opts.include_btc,
                    "Include the short-leg asset in the summary");
    stats->add_option("--report-out", opts.report_out, "Write the summary as JSON");

    CLI::App* validate = app.add_subcommand("validate", "Check the data directory and knobs");
    add_data_options(validate, opts);
    add_window_options(validate, opts);
    add_strategy_options(validate, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (backtest->parsed()) return run_backtest_command(opts);
        if (stats->parsed()) return run_stats_command(opts);
        if (validate->parsed()) return run_validate_command(opts);
    } catch (const cryptoarb::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const cryptoarb::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
