#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cryptoarb/panel.hpp"

namespace cryptoarb {

// Expected file names inside a data directory. Each numeric file is a
// tab-separated grid, one asset per row, most recent date in the first
// column; "?", "NA", and empty cells mean "missing".
inline constexpr const char* kCloseFile = "cr.prc.txt";
inline constexpr const char* kOpenFile = "cr.open.txt";
inline constexpr const char* kHighFile = "cr.high.txt";
inline constexpr const char* kLowFile = "cr.low.txt";
inline constexpr const char* kVolumeFile = "cr.vol.txt";
inline constexpr const char* kCapFile = "cr.cap.txt";
inline constexpr const char* kNameFile = "cr.name.txt";
inline constexpr const char* kMinableFile = "cr.mnbl.txt";

struct MarketDataSet {
    PanelMatrix close;
    PanelMatrix open;
    PanelMatrix high;
    PanelMatrix low;
    PanelMatrix volume;
    PanelMatrix cap;
    std::vector<std::string> names;
    std::optional<std::vector<std::string>> minable;  // absent when file is missing
};

struct IngestReport {
    std::size_t n_assets = 0;
    std::size_t n_dates = 0;
    std::map<std::string, std::size_t> missing_cells;  // file name -> NaN count
    std::vector<std::string> warnings;
};

struct LoadedDataset {
    MarketDataSet data;
    IngestReport report;
};

// Parses one grid cell. Returns nullopt for the missing markers ("?", "NA",
// empty) and throws DataError on anything else that is not a number.
std::optional<double> parse_cell(const std::string& token, const std::string& context);

// Loads one tab-separated numeric grid; throws DataError on ragged rows or
// unreadable files. With header=true the first line is skipped.
PanelMatrix load_numeric_panel(const std::filesystem::path& path, bool header = false);

// Loads a one-column text file (asset names or flags), one entry per line.
std::vector<std::string> load_text_table(const std::filesystem::path& path, bool header = false);

// Writes a panel in the same tab-separated format, round-tripping doubles
// exactly; missing cells come out as "?".
void write_panel(const PanelMatrix& panel, const std::filesystem::path& path);

// Loads the full directory and cross-checks shapes; throws DataError when a
// required file is absent or grids disagree on dimensions.
LoadedDataset load_dataset(const std::filesystem::path& dir, bool header = false);

}  // namespace cryptoarb
