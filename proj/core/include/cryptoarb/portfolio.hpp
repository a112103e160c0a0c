#pragma once

#include <cstddef>
#include <vector>

namespace cryptoarb {

enum class SignalMode {
    kMeanReversion,  // fade yesterday's move: long the losers
    kReversed,       // follow yesterday's move: long the winners
    kAlwaysOn,       // long every eligible asset
};

enum class WeightingScheme {
    kEqual,       // x = raw signal
    kInverseVol,  // x /= sigma
    kMomOverVar,  // x *= |mom| / sigma^2
};

struct WeightVector {
    std::vector<double> w;      // non-negative, sums to 1 (or all zero)
    std::size_t n_signals = 0;  // entries with positive raw signal
};

// Raw long-only signal from yesterday's momentum, already clipped to {0, 1}:
// mean-reversion longs mom < 0, reversed longs mom > 0, always-on longs all.
// mom == 0 (and NaN) yields 0 in every mode.
std::vector<double> raw_signal(const std::vector<double>& mom, SignalMode mode);

// Zeroes ineligible assets, applies the weighting scheme to the surviving
// positive signals, and normalizes to unit gross exposure. vol and mom may
// be empty for the equal scheme. Throws DataError when a signaled asset has
// a non-finite or non-positive volatility under a vol-based scheme. When no
// signal survives, returns all-zero weights with n_signals == 0.
WeightVector build_weights(const std::vector<double>& signal, const std::vector<bool>& eligible,
                           WeightingScheme scheme, const std::vector<double>& vol,
                           const std::vector<double>& mom);

}  // namespace cryptoarb
