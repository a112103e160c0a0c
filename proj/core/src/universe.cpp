#include "cryptoarb/universe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "cryptoarb/error.hpp"

namespace cryptoarb {

const char* to_string(RejectReason reason) {
    switch (reason) {
        case RejectReason::kNaData:
            return "missing data";
        case RejectReason::kZeroVolume:
            return "zero volume";
        case RejectReason::kStalePrice:
            return "stale price";
    }
    return "unknown";
}

void TierSpec::validate() const {
    if (ix_upper < 1) throw ConfigError("rank-upper must be at least 1");
    if (ix_lower && *ix_lower < ix_upper) {
        throw ConfigError("rank-lower " + std::to_string(*ix_lower) +
                          " is above rank-upper " + std::to_string(ix_upper));
    }
}

StaticMask static_filter(const PanelMatrix& close, const PanelMatrix& open,
                         const PanelMatrix& high, const PanelMatrix& low,
                         const PanelMatrix& volume, const PanelMatrix& cap) {
    const PanelMatrix* panels[] = {&close, &open, &high, &low, &volume, &cap};
    for (const auto* p : panels) {
        if (!p->same_shape(close)) throw DataError("panel shape mismatch in static filter");
    }
    StaticMask mask;
    mask.keep.assign(close.n_assets(), true);
    for (std::size_t i = 0; i < close.n_assets(); ++i) {
        bool has_na = false;
        for (const auto* p : panels) {
            for (std::size_t s = 0; s < close.n_dates() && !has_na; ++s) {
                has_na = PanelMatrix::is_missing((*p)(i, s));
            }
            if (has_na) break;
        }
        if (has_na) {
            mask.keep[i] = false;
            mask.reasons.emplace_back(i, RejectReason::kNaData);
            continue;
        }
        bool zero_vol = false;
        for (std::size_t s = 0; s < close.n_dates() && !zero_vol; ++s) {
            zero_vol = volume(i, s) == 0.0;
        }
        if (zero_vol) {
            mask.keep[i] = false;
            mask.reasons.emplace_back(i, RejectReason::kZeroVolume);
        }
    }
    for (bool k : mask.keep) mask.n_kept += k ? 1 : 0;
    return mask;
}

StaticMask stale_filter(const PanelMatrix& hlv) {
    StaticMask mask;
    mask.keep.assign(hlv.n_assets(), true);
    for (std::size_t i = 0; i < hlv.n_assets(); ++i) {
        for (std::size_t s = 0; s < hlv.n_dates(); ++s) {
            if (!std::isfinite(hlv(i, s))) {
                mask.keep[i] = false;
                mask.reasons.emplace_back(i, RejectReason::kStalePrice);
                break;
            }
        }
    }
    for (bool k : mask.keep) mask.n_kept += k ? 1 : 0;
    return mask;
}

std::vector<bool> tier_mask(const std::vector<double>& sizes, const TierSpec& tier) {
    std::vector<double> pool;
    pool.reserve(sizes.size());
    for (double v : sizes) {
        if (!std::isnan(v)) pool.push_back(v);
    }
    std::sort(pool.begin(), pool.end(), std::greater<>());
    if (tier.ix_upper > pool.size()) {
        throw DataError("rank-upper " + std::to_string(tier.ix_upper) +
                        " exceeds universe size " + std::to_string(pool.size()));
    }
    if (tier.ix_lower && *tier.ix_lower > pool.size()) {
        throw DataError("rank-lower " + std::to_string(*tier.ix_lower) +
                        " exceeds universe size " + std::to_string(pool.size()));
    }
    const double upper_cut = pool[tier.ix_upper - 1];
    const double lower_cut = tier.ix_lower ? pool[*tier.ix_lower - 1] : pool.back();
    std::vector<bool> in_tier(sizes.size(), false);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double v = sizes[i];
        if (std::isnan(v)) continue;
        in_tier[i] = v <= upper_cut && v >= lower_cut;
    }
    return in_tier;
}

std::vector<bool> apply_exclusions(const std::vector<std::string>& names,
                                   const std::vector<std::string>& excluded, bool active) {
    std::vector<bool> allowed(names.size(), true);
    if (!active) return allowed;
    for (std::size_t i = 0; i < names.size(); ++i) {
        for (const auto& bad : excluded) {
            if (names[i] == bad) {
                allowed[i] = false;
                break;
            }
        }
    }
    return allowed;
}

std::size_t locate_bitcoin(const std::vector<std::string>& names, const PanelMatrix& cap,
                           const std::string& btc_name, std::vector<std::string>* warnings) {
    std::size_t found = names.size();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] != btc_name) continue;
        if (found != names.size()) {
            throw DataError("asset name '" + btc_name + "' appears more than once");
        }
        found = i;
    }
    if (found == names.size()) {
        throw DataError("short-leg asset '" + btc_name + "' not found in the universe");
    }
    if (warnings && cap.n_assets() == names.size() && cap.n_dates() > 0) {
        const double btc_cap = cap(found, 0);
        for (std::size_t i = 0; i < cap.n_assets(); ++i) {
            const double c = cap(i, 0);
            if (!std::isnan(c) && !std::isnan(btc_cap) && c > btc_cap) {
                warnings->push_back("'" + btc_name +
                                    "' is not the largest cap on the most recent day; check "
                                    "the asset naming");
                break;
            }
        }
    }
    return found;
}

DailyUniverse build_daily_universe(const PanelMatrix& size, const TierSpec& tier,
                                   const std::vector<bool>& excluded_mask,
                                   std::size_t btc_index) {
    if (excluded_mask.size() != size.n_assets()) {
        throw DataError("exclusion mask size does not match the universe");
    }
    if (btc_index >= size.n_assets()) throw DataError("short-leg index out of range");
    DailyUniverse out;
    out.btc_index = btc_index;
    out.eligible.resize(size.n_dates());
    for (std::size_t s = 0; s < size.n_dates(); ++s) {
        auto day = tier_mask(size.col(s), tier);
        for (std::size_t i = 0; i < day.size(); ++i) {
            if (!excluded_mask[i]) day[i] = false;
        }
        day[btc_index] = false;
        out.eligible[s] = std::move(day);
    }
    return out;
}

}  // namespace cryptoarb
