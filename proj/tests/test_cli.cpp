#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cryptoarb/backtest.hpp"
#include "support/dataset_builders.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() / "cryptoarb_cli_io";
    fs::create_directories(dir);
    const fs::path out_path = dir / ("out_" + std::to_string(++counter) + ".txt");
    const fs::path err_path = dir / ("err_" + std::to_string(counter) + ".txt");

    const std::string cmd = std::string(CRYPTOARB_CLI_PATH) + " " + args + " > \"" +
                            out_path.string() + "\" 2> \"" + err_path.string() + "\"";
    const int status = std::system(cmd.c_str());
    CliResult res;
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = read_file(out_path);
    res.err = read_file(err_path);
    return res;
}

// The five-asset falling-altcoin fixture used across the CLI cases.
refloop::Inputs cli_fixture() {
    testsupport::SimpleSpec spec;
    spec.cols = 12;
    spec.base_price = {5000.0, 100.0, 50.0, 20.0, 10.0};
    spec.drift = {-0.01, -0.02, -0.03, -0.015, -0.025};
    spec.cap = {1e10, 1e8, 8e7, 6e7, 4e7};
    spec.names = {"Bitcoin", "AltA", "AltB", "AltC", "AltD"};
    return testsupport::build_simple(spec);
}

const std::string kKnobs = " --days 8 --dr 3 --dv 2 --di 2 --lookback 4 --rank-upper 1";

cryptoarb::BacktestConfig fixture_config() {
    cryptoarb::BacktestConfig cfg;
    cfg.days = 8;
    cfg.d_r = 3;
    cfg.d_v = 2;
    cfg.d_i = 2;
    cfg.lookback = 4;
    cfg.tier.ix_upper = 1;
    cfg.tier.ix_lower.reset();
    return cfg;
}

std::string two_dec(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

TEST_CASE("help and version exit cleanly") {
    const auto help = run_cli("--help");
    CHECK(help.code == 0);
    CHECK(help.out.find("backtest") != std::string::npos);
    CHECK(help.out.find("stats") != std::string::npos);

    const auto version = run_cli("--version");
    CHECK(version.code == 0);
    CHECK(version.out.find("cryptoarb 0.1.0") != std::string::npos);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("").code == 1);              // a subcommand is required
    CHECK(run_cli("backtest").code == 1);      // --data-dir is required
    CHECK(run_cli("backtest --data-dir x --no-such-flag").code == 1);
    CHECK(run_cli("frobnicate").code == 1);
}

TEST_CASE("a missing data directory is a data error") {
    const auto res = run_cli("backtest --data-dir /nonexistent/path" + kKnobs);
    CHECK(res.code == 2);
    CHECK(res.err.find("error:") != std::string::npos);
}

TEST_CASE("backtest prints the performance block that the library computes") {
    const auto in = cli_fixture();
    const auto dir = testsupport::scratch_dir("cli_happy");
    testsupport::write_dataset(in, dir);

    const auto expected =
        cryptoarb::run_backtest(testsupport::to_market_data(in), fixture_config());

    const auto res = run_cli("backtest --data-dir \"" + dir.string() + "\"" + kKnobs);
    REQUIRE(res.code == 0);
    CHECK(res.out.find("Days:       4") != std::string::npos);
    CHECK(res.out.find("Assets:     5 (of 5 input)") != std::string::npos);
    CHECK(res.out.find("ROC (%):    " + two_dec(expected.roc_pct())) != std::string::npos);
    CHECK(res.out.find("Sharpe:     " + two_dec(expected.sharpe())) != std::string::npos);
}

TEST_CASE("asking for more history than exists fails with exit 2") {
    const auto dir = testsupport::scratch_dir("cli_short");
    testsupport::write_dataset(cli_fixture(), dir);
    const auto res = run_cli("backtest --data-dir \"" + dir.string() +
                             "\" --days 30 --dr 3 --dv 2 --di 2 --lookback 4");
    CHECK(res.code == 2);
    CHECK(res.err.find("insufficient history") != std::string::npos);
}

TEST_CASE("nonsense knobs fail with exit 1") {
    const auto dir = testsupport::scratch_dir("cli_knob");
    testsupport::write_dataset(cli_fixture(), dir);
    const auto res = run_cli("backtest --data-dir \"" + dir.string() +
                             "\" --rank-upper 0" + " --days 8 --dr 3 --dv 2 --di 2");
    CHECK(res.code == 1);
    CHECK(res.err.find("error:") != std::string::npos);
}

TEST_CASE("artifacts are reproducible byte for byte") {
    const auto in = cli_fixture();
    const auto dir = testsupport::scratch_dir("cli_artifacts");
    testsupport::write_dataset(in, dir);
    const auto base = "backtest --data-dir \"" + dir.string() + "\"" + kKnobs;

    const fs::path csv_a = dir / "a.csv";
    const fs::path json_a = dir / "a.json";
    const fs::path csv_b = dir / "b.csv";
    const fs::path json_b = dir / "b.json";

    REQUIRE(run_cli(base + " --pnl-out " + csv_a.string() + " --report-out " +
                    json_a.string())
                .code == 0);
    REQUIRE(run_cli(base + " --pnl-out " + csv_b.string() + " --report-out " +
                    json_b.string())
                .code == 0);

    const std::string csv = read_file(csv_a);
    CHECK(csv == read_file(csv_b));
    CHECK(read_file(json_a) == read_file(json_b));

    // CSV: one header plus one row per simulated day, oldest first.
    CHECK(csv.rfind("day_index,daily_pnl,cum_pnl\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv) lines += ch == '\n' ? 1 : 0;
    CHECK(lines == 5);

    const auto expected =
        cryptoarb::run_backtest(testsupport::to_market_data(in), fixture_config());
    const auto j = nlohmann::json::parse(read_file(json_a));
    CHECK(j["config"]["lookback"] == 4);
    CHECK(j["config"]["rank_upper"] == 1);
    CHECK(j["summary"]["n_days"] == 4);
    CHECK(j["performance"]["roc_pct"].get<double>() ==
          doctest::Approx(expected.roc_pct()).epsilon(1e-12));
    CHECK(j["performance"]["sharpe"].get<double>() ==
          doctest::Approx(expected.sharpe()).epsilon(1e-12));
}

TEST_CASE("stats summarizes the eligible universe") {
    const auto dir = testsupport::scratch_dir("cli_stats");
    testsupport::write_dataset(cli_fixture(), dir);
    const auto base = "stats --data-dir \"" + dir.string() + "\"" + kKnobs;

    const auto res = run_cli(base + " --adv-window 5");
    REQUIRE(res.code == 0);
    CHECK(res.out.find("Assets: 4") != std::string::npos);
    CHECK(res.out.find("Cap ($):") != std::string::npos);
    CHECK(res.out.find("ADV ($):") != std::string::npos);
    CHECK(res.out.find("Tvr:") != std::string::npos);

    const fs::path json_path = dir / "liq.json";
    const auto with_btc = run_cli(base + " --adv-window 5 --include-btc --report-out " +
                                  json_path.string());
    REQUIRE(with_btc.code == 0);
    CHECK(with_btc.out.find("Assets: 5") != std::string::npos);

    const auto j = nlohmann::json::parse(read_file(json_path));
    CHECK(j["n_assets"] == 5);
    CHECK(j["adv_window"] == 5);
    // Constant volume of 1000 per day for every asset.
    CHECK(j["adv"]["min"].get<double>() == doctest::Approx(1000.0));
    CHECK(j["adv"]["max"].get<double>() == doctest::Approx(1000.0));
    CHECK(j["cap"]["max"].get<double>() == doctest::Approx(1e10));

    // The default 20-day window does not fit this 12-date panel.
    CHECK(run_cli(base).code == 1);
}

TEST_CASE("validate checks the directory and reports OK") {
    const auto dir = testsupport::scratch_dir("cli_validate");
    testsupport::write_dataset(cli_fixture(), dir);
    const auto res = run_cli("validate --data-dir \"" + dir.string() + "\"" + kKnobs);
    REQUIRE(res.code == 0);
    CHECK(res.out.find("Assets: 5") != std::string::npos);
    CHECK(res.out.find("Dates:  12") != std::string::npos);
    CHECK(res.out.find("OK") != std::string::npos);
}

TEST_CASE("a header line in every file is skipped on request") {
    const auto in = cli_fixture();
    const auto plain = testsupport::scratch_dir("cli_plain");
    testsupport::write_dataset(in, plain);

    const auto with_header = testsupport::scratch_dir("cli_header");
    for (const auto& entry : fs::directory_iterator(plain)) {
        const auto body = read_file(entry.path());
        std::ofstream out(with_header / entry.path().filename());
        out << "# header line\n" << body;
    }

    const auto a = run_cli("backtest --data-dir \"" + plain.string() + "\"" + kKnobs);
    const auto b =
        run_cli("backtest --data-dir \"" + with_header.string() + "\" --header" + kKnobs);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("a missing minable table only warns") {
    const auto dir = testsupport::scratch_dir("cli_nominable");
    testsupport::write_dataset(cli_fixture(), dir, false);
    const auto res = run_cli("backtest --data-dir \"" + dir.string() + "\"" + kKnobs);
    CHECK(res.code == 0);
    CHECK(res.err.find("cr.mnbl.txt") != std::string::npos);
}

TEST_CASE("missing cells mark an asset as unusable but the run proceeds") {
    auto in = cli_fixture();
    in.cap[2][5] = std::numeric_limits<double>::quiet_NaN();  // written as '?'
    const auto dir = testsupport::scratch_dir("cli_missing");
    testsupport::write_dataset(in, dir);

    const auto res = run_cli("backtest --data-dir \"" + dir.string() + "\"" + kKnobs);
    REQUIRE(res.code == 0);
    CHECK(res.out.find("Assets:     4 (of 5 input)") != std::string::npos);
}
