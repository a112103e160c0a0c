#include <doctest.h>

#include <cmath>
#include <random>

#include "cryptoarb/error.hpp"
#include "cryptoarb/factors.hpp"
#include "cryptoarb/universe.hpp"
#include "support/dataset_builders.hpp"
#include "support/random_dataset.hpp"

using cryptoarb::DataError;
using cryptoarb::PanelMatrix;
using cryptoarb::TierSpec;
using testsupport::to_panel;

namespace {

std::vector<double> logs(std::initializer_list<double> caps) {
    std::vector<double> out;
    for (double c : caps) out.push_back(std::log(c));
    return out;
}

}  // namespace

TEST_CASE("static_filter rejects missing data and zero volume with reasons") {
    std::mt19937_64 rng(3);
    auto in = testsupport::random_inputs(rng, 8, 15, false);
    in.high[2][4] = std::numeric_limits<double>::quiet_NaN();
    in.vol[5][9] = 0.0;
    const auto data = testsupport::to_market_data(in);
    const auto mask = cryptoarb::static_filter(data.close, data.open, data.high, data.low,
                                               data.volume, data.cap);
    REQUIRE(mask.keep.size() == 8);
    CHECK(mask.n_kept == 6);
    CHECK_FALSE(mask.keep[2]);
    CHECK_FALSE(mask.keep[5]);
    CHECK(mask.keep[0]);
    REQUIRE(mask.reasons.size() == 2);
    CHECK(mask.reasons[0].first == 2);
    CHECK(mask.reasons[0].second == cryptoarb::RejectReason::kNaData);
    CHECK(mask.reasons[1].first == 5);
    CHECK(mask.reasons[1].second == cryptoarb::RejectReason::kZeroVolume);
}

TEST_CASE("stale_filter is all-or-nothing per asset") {
    PanelMatrix hlv = to_panel({{-1.0, -2.0, -1.5}, {-1.0, -2.0, -1.5}});
    hlv(1, 1) = -std::numeric_limits<double>::infinity();
    const auto mask = cryptoarb::stale_filter(hlv);
    CHECK(mask.keep[0]);
    CHECK_FALSE(mask.keep[1]);
    CHECK(mask.n_kept == 1);
    REQUIRE(mask.reasons.size() == 1);
    CHECK(mask.reasons[0].second == cryptoarb::RejectReason::kStalePrice);
}

TEST_CASE("tier_mask selects the hand-computed cap band") {
    // Caps (largest first): 100 is Bitcoin's; ranks 2..3 are {50, 40}.
    const auto sizes = logs({100.0, 50.0, 40.0, 30.0, 20.0});
    TierSpec tier;
    tier.ix_upper = 2;
    tier.ix_lower = 3;
    const auto mask = cryptoarb::tier_mask(sizes, tier);
    CHECK(mask == std::vector<bool>{false, true, true, false, false});
}

TEST_CASE("tier_mask admits ties at the boundary") {
    const auto sizes = logs({100.0, 50.0, 40.0, 40.0, 20.0});
    TierSpec tier;
    tier.ix_upper = 2;
    tier.ix_lower = 3;  // the rank-3 value is 40; both assets at 40 qualify
    const auto mask = cryptoarb::tier_mask(sizes, tier);
    CHECK(mask == std::vector<bool>{false, true, true, true, false});
}

TEST_CASE("tier_mask with full range admits everyone") {
    const auto sizes = logs({100.0, 50.0, 40.0});
    TierSpec tier;
    tier.ix_upper = 1;
    tier.ix_lower.reset();  // unbounded
    const auto mask = cryptoarb::tier_mask(sizes, tier);
    CHECK(mask == std::vector<bool>{true, true, true});
}

TEST_CASE("widening a tier never removes an eligible asset") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> cap(10.0, 1e6);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> sizes(12);
        for (auto& v : sizes) v = std::log(cap(rng));
        TierSpec narrow;
        narrow.ix_upper = 3;
        narrow.ix_lower = 6;
        TierSpec wide;
        wide.ix_upper = 2;
        wide.ix_lower = 9;
        const auto m_narrow = cryptoarb::tier_mask(sizes, narrow);
        const auto m_wide = cryptoarb::tier_mask(sizes, wide);
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (m_narrow[i]) CHECK(m_wide[i]);
        }
    }
}

TEST_CASE("tier_mask rejects ranks beyond the pool and validates bounds") {
    const auto sizes = logs({100.0, 50.0});
    TierSpec tier;
    tier.ix_upper = 3;
    CHECK_THROWS_AS(cryptoarb::tier_mask(sizes, tier), DataError);

    TierSpec inverted;
    inverted.ix_upper = 4;
    inverted.ix_lower = 2;
    CHECK_THROWS_AS(inverted.validate(), cryptoarb::ConfigError);

    TierSpec zero;
    zero.ix_upper = 0;
    CHECK_THROWS_AS(zero.validate(), cryptoarb::ConfigError);
}

TEST_CASE("apply_exclusions honors the active flag") {
    const std::vector<std::string> names{"Bitcoin", "Circuits of V...", "Alt02"};
    const std::vector<std::string> excl{"Circuits of V..."};

    const auto active = cryptoarb::apply_exclusions(names, excl, true);
    CHECK(active == std::vector<bool>{true, false, true});

    const auto inactive = cryptoarb::apply_exclusions(names, excl, false);
    CHECK(inactive == std::vector<bool>{true, true, true});

    const auto none = cryptoarb::apply_exclusions(names, {}, true);
    CHECK(none == std::vector<bool>{true, true, true});
}

TEST_CASE("locate_bitcoin finds the unique named row") {
    const PanelMatrix cap = to_panel({{9e9, 9e9}, {1e6, 1e6}, {2e6, 2e6}});
    std::vector<std::string> warnings;
    CHECK(cryptoarb::locate_bitcoin({"Bitcoin", "XRP", "Ether"}, cap, "Bitcoin", &warnings) == 0);
    CHECK(warnings.empty());

    CHECK_THROWS_AS(cryptoarb::locate_bitcoin({"XRP", "Ether", "Dash"}, cap, "Bitcoin", nullptr),
                    DataError);
    CHECK_THROWS_AS(
        cryptoarb::locate_bitcoin({"Bitcoin", "Bitcoin", "XRP"}, cap, "Bitcoin", nullptr),
        DataError);
}

TEST_CASE("locate_bitcoin warns when the named row is not the top cap") {
    const PanelMatrix cap = to_panel({{1e6, 1e6}, {9e9, 9e9}});
    std::vector<std::string> warnings;
    CHECK(cryptoarb::locate_bitcoin({"Bitcoin", "XRP"}, cap, "Bitcoin", &warnings) == 0);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("largest cap") != std::string::npos);
}

TEST_CASE("build_daily_universe combines tier, exclusions, and the short leg") {
    // Two days; caps swap ranks between them for the two altcoins.
    PanelMatrix size(4, 2);
    const double caps_day0[] = {100.0, 50.0, 40.0, 5.0};
    const double caps_day1[] = {100.0, 40.0, 50.0, 5.0};
    for (std::size_t i = 0; i < 4; ++i) {
        size(i, 0) = std::log(caps_day0[i]);
        size(i, 1) = std::log(caps_day1[i]);
    }
    TierSpec tier;
    tier.ix_upper = 2;
    tier.ix_lower = 2;
    const std::vector<bool> allowed{true, true, false, true};  // row 2 excluded by name

    const auto universe = cryptoarb::build_daily_universe(size, tier, allowed, 0);
    REQUIRE(universe.eligible.size() == 2);
    // Day 0: rank 2 is row 1 (50); allowed.
    CHECK(universe.eligible[0] == std::vector<bool>{false, true, false, false});
    // Day 1: rank 2 is row 2 (50) but it is excluded.
    CHECK(universe.eligible[1] == std::vector<bool>{false, false, false, false});

    // Bitcoin is ranked but never eligible, even when the tier includes rank 1.
    TierSpec full;
    full.ix_upper = 1;
    full.ix_lower.reset();
    const auto all_days =
        cryptoarb::build_daily_universe(size, full, {true, true, true, true}, 0);
    CHECK_FALSE(all_days.eligible[0][0]);
    CHECK(all_days.eligible[0][1]);
    CHECK(all_days.eligible[0][3]);
}
