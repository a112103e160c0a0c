#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace cryptoarb {

// Asset-by-date grid of doubles. Column 0 holds the most recent date and the
// column index increases into the past. A missing cell is stored as NaN.
class PanelMatrix {
public:
    PanelMatrix() = default;

    PanelMatrix(std::size_t n_assets, std::size_t n_dates)
        : n_assets_(n_assets),
          n_dates_(n_dates),
          cells_(n_assets * n_dates, missing_value()) {}

    // Builds a panel from per-asset rows; throws DataError on ragged input.
    static PanelMatrix from_rows(const std::vector<std::vector<double>>& rows);

    static double missing_value() { return std::numeric_limits<double>::quiet_NaN(); }
    static bool is_missing(double v) { return std::isnan(v); }

    std::size_t n_assets() const { return n_assets_; }
    std::size_t n_dates() const { return n_dates_; }
    bool empty() const { return n_assets_ == 0 || n_dates_ == 0; }

    double operator()(std::size_t asset, std::size_t date) const {
        assert(asset < n_assets_ && date < n_dates_);
        return cells_[asset * n_dates_ + date];
    }
    double& operator()(std::size_t asset, std::size_t date) {
        assert(asset < n_assets_ && date < n_dates_);
        return cells_[asset * n_dates_ + date];
    }

    // Row = full date series of one asset, most recent first.
    std::span<const double> row(std::size_t asset) const {
        assert(asset < n_assets_);
        return {cells_.data() + asset * n_dates_, n_dates_};
    }

    std::vector<double> col(std::size_t date) const;

    // The n most recent date columns.
    PanelMatrix first_cols(std::size_t n) const;
    // Drops the n most recent date columns.
    PanelMatrix drop_front_cols(std::size_t n) const;
    // Keeps rows whose mask entry is true, preserving order.
    PanelMatrix select_rows(const std::vector<bool>& keep) const;

    std::size_t count_missing() const;

    bool same_shape(const PanelMatrix& other) const {
        return n_assets_ == other.n_assets_ && n_dates_ == other.n_dates_;
    }

private:
    std::size_t n_assets_ = 0;
    std::size_t n_dates_ = 0;
    std::vector<double> cells_;  // row-major
};

// Filters a per-asset vector by the same row mask used for panels.
template <class T>
std::vector<T> select_by_mask(const std::vector<T>& items, const std::vector<bool>& keep) {
    assert(items.size() == keep.size());
    std::vector<T> out;
    out.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (keep[i]) out.push_back(items[i]);
    }
    return out;
}

}  // namespace cryptoarb
