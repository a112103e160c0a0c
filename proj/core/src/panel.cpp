#include "cryptoarb/panel.hpp"

#include <string>

#include "cryptoarb/error.hpp"

namespace cryptoarb {

PanelMatrix PanelMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    const std::size_t width = rows.front().size();
    PanelMatrix out(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != width) {
            throw DataError("ragged panel: row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " columns, expected " +
                            std::to_string(width));
        }
        for (std::size_t s = 0; s < width; ++s) out(i, s) = rows[i][s];
    }
    return out;
}

std::vector<double> PanelMatrix::col(std::size_t date) const {
    assert(date < n_dates_);
    std::vector<double> out(n_assets_);
    for (std::size_t i = 0; i < n_assets_; ++i) out[i] = (*this)(i, date);
    return out;
}

PanelMatrix PanelMatrix::first_cols(std::size_t n) const {
    if (n > n_dates_) {
        throw DataError("cannot take " + std::to_string(n) + " columns from a panel with " +
                        std::to_string(n_dates_));
    }
    PanelMatrix out(n_assets_, n);
    for (std::size_t i = 0; i < n_assets_; ++i) {
        for (std::size_t s = 0; s < n; ++s) out(i, s) = (*this)(i, s);
    }
    return out;
}

PanelMatrix PanelMatrix::drop_front_cols(std::size_t n) const {
    if (n > n_dates_) {
        throw DataError("cannot drop " + std::to_string(n) + " columns from a panel with " +
                        std::to_string(n_dates_));
    }
    PanelMatrix out(n_assets_, n_dates_ - n);
    for (std::size_t i = 0; i < n_assets_; ++i) {
        for (std::size_t s = 0; s < out.n_dates(); ++s) out(i, s) = (*this)(i, s + n);
    }
    return out;
}

PanelMatrix PanelMatrix::select_rows(const std::vector<bool>& keep) const {
    if (keep.size() != n_assets_) {
        throw DataError("row mask size " + std::to_string(keep.size()) +
                        " does not match panel rows " + std::to_string(n_assets_));
    }
    std::size_t n_kept = 0;
    for (bool k : keep) n_kept += k ? 1 : 0;
    PanelMatrix out(n_kept, n_dates_);
    std::size_t j = 0;
    for (std::size_t i = 0; i < n_assets_; ++i) {
        if (!keep[i]) continue;
        for (std::size_t s = 0; s < n_dates_; ++s) out(j, s) = (*this)(i, s);
        ++j;
    }
    return out;
}

std::size_t PanelMatrix::count_missing() const {
    std::size_t n = 0;
    for (double v : cells_) n += is_missing(v) ? 1 : 0;
    return n;
}

}  // namespace cryptoarb
