#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cryptoarb/panel.hpp"

namespace cryptoarb {

enum class RejectReason {
    kNaData,      // a missing cell somewhere in the padded window
    kZeroVolume,  // at least one zero-volume day
    kStalePrice,  // intraday volatility degenerated to -inf / NaN
};

const char* to_string(RejectReason reason);

struct StaticMask {
    std::vector<bool> keep;                                     // per original row
    std::vector<std::pair<std::size_t, RejectReason>> reasons;  // rejected rows
    std::size_t n_kept = 0;
};

// Capitalization tier, expressed as ranks into the size-sorted universe:
// rank 1 is the largest cap. An unset ix_lower means "down to the smallest".
struct TierSpec {
    std::size_t ix_upper = 2;
    std::optional<std::size_t> ix_lower;  // nullopt = unbounded

    void validate() const;  // throws ConfigError on ix_upper < 1 or inverted bounds
};

struct DailyUniverse {
    // eligible[day][asset]: asset may receive weight on that day.
    std::vector<std::vector<bool>> eligible;
    std::size_t btc_index = 0;
};

// Rows that have a full history: no missing cell in any of the six panels
// and no zero-volume day anywhere in the window.
StaticMask static_filter(const PanelMatrix& close, const PanelMatrix& open,
                         const PanelMatrix& high, const PanelMatrix& low,
                         const PanelMatrix& volume, const PanelMatrix& cap);

// Drops rows whose hlv panel contains any non-finite value (an asset whose
// high == low for a whole averaging window traded at a stale price).
StaticMask stale_filter(const PanelMatrix& hlv);

// Marks assets inside the cap tier for one day. sizes = that day's log-cap
// column; assets with NaN size never qualify. Ties at the boundary values
// are admitted. Throws DataError when a bound exceeds the day's pool.
std::vector<bool> tier_mask(const std::vector<double>& sizes, const TierSpec& tier);

// Returns a mask that is false for every named asset present in `names`.
// With active == false the list is ignored and the mask is all-true, so
// callers can pass conditionally-applied lists unconditionally.
std::vector<bool> apply_exclusions(const std::vector<std::string>& names,
                                   const std::vector<std::string>& excluded, bool active);

// Finds the unique row whose name equals btc_name; throws DataError when it
// is absent or duplicated. Appends a warning when that row is not the top
// cap on the most recent day (a likely mislabeled dataset).
std::size_t locate_bitcoin(const std::vector<std::string>& names, const PanelMatrix& cap,
                           const std::string& btc_name, std::vector<std::string>* warnings);

// Combines the per-day tier with the static exclusions and the Bitcoin row.
DailyUniverse build_daily_universe(const PanelMatrix& size, const TierSpec& tier,
                                   const std::vector<bool>& excluded_mask,
                                   std::size_t btc_index);

}  // namespace cryptoarb
