#include "cryptoarb/portfolio.hpp"

#include <cmath>
#include <string>

#include "cryptoarb/error.hpp"

namespace cryptoarb {

std::vector<double> raw_signal(const std::vector<double>& mom, SignalMode mode) {
    std::vector<double> x(mom.size(), 0.0);
    for (std::size_t i = 0; i < mom.size(); ++i) {
        const double m = mom[i];
        if (std::isnan(m)) continue;
        switch (mode) {
            case SignalMode::kMeanReversion:
                x[i] = m < 0.0 ? 1.0 : 0.0;
                break;
            case SignalMode::kReversed:
                x[i] = m > 0.0 ? 1.0 : 0.0;
                break;
            case SignalMode::kAlwaysOn:
                x[i] = 1.0;
                break;
        }
    }
    return x;
}

WeightVector build_weights(const std::vector<double>& signal, const std::vector<bool>& eligible,
                           WeightingScheme scheme, const std::vector<double>& vol,
                           const std::vector<double>& mom) {
    if (signal.size() != eligible.size()) {
        throw DataError("signal and eligibility size mismatch");
    }
    const bool needs_vol = scheme != WeightingScheme::kEqual;
    if (needs_vol && vol.size() != signal.size()) {
        throw DataError("volatility vector size mismatch");
    }
    if (scheme == WeightingScheme::kMomOverVar && mom.size() != signal.size()) {
        throw DataError("momentum vector size mismatch");
    }

    WeightVector out;
    out.w.assign(signal.size(), 0.0);
    for (std::size_t i = 0; i < signal.size(); ++i) {
        double x = eligible[i] ? signal[i] : 0.0;
        if (x <= 0.0 || std::isnan(x)) continue;
        if (needs_vol) {
            const double sigma = vol[i];
            if (!std::isfinite(sigma) || sigma <= 0.0) {
                throw DataError("non-positive volatility " + std::to_string(sigma) +
                                " on a signaled asset (row " + std::to_string(i) + ")");
            }
            if (scheme == WeightingScheme::kInverseVol) {
                x /= sigma;
            } else {  // kMomOverVar
                const double m = mom[i];
                if (!std::isfinite(m)) {
                    throw DataError("non-finite momentum on a signaled asset (row " +
                                    std::to_string(i) + ")");
                }
                x *= std::fabs(m) / (sigma * sigma);
            }
        }
        out.w[i] = x;
        ++out.n_signals;
    }

    double gross = 0.0;
    for (double w : out.w) gross += std::fabs(w);
    if (gross == 0.0) {
        out.n_signals = 0;
        return out;
    }
    for (double& w : out.w) w /= gross;
    return out;
}

}  // namespace cryptoarb
