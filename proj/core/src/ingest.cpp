#include "cryptoarb/ingest.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <utility>

#include "cryptoarb/error.hpp"

namespace cryptoarb {

namespace {

// Strips a trailing '\r' so CRLF files parse the same as LF files.
void chomp(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::string trimmed(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> read_lines(const std::filesystem::path& path, bool header) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        chomp(line);
        if (first && header) {
            first = false;
            continue;
        }
        first = false;
        lines.push_back(line);
    }
    // Ignore a single trailing blank line from a final newline.
    while (!lines.empty() && trimmed(lines.back()).empty()) lines.pop_back();
    return lines;
}

}  // namespace

std::optional<double> parse_cell(const std::string& token, const std::string& context) {
    const std::string t = trimmed(token);
    if (t.empty() || t == "?" || t == "NA") return std::nullopt;
    // from_chars rejects a leading '+', which some exports carry.
    std::string_view sv = t;
    if (!sv.empty() && sv.front() == '+') sv.remove_prefix(1);
    double value = 0.0;
    const auto* first = sv.data();
    const auto* last = sv.data() + sv.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw DataError("unparseable cell '" + token + "' in " + context);
    }
    return value;
}

PanelMatrix load_numeric_panel(const std::filesystem::path& path, bool header) {
    const auto lines = read_lines(path, header);
    std::vector<std::vector<double>> rows;
    rows.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto tokens = split_tabs(lines[i]);
        std::vector<double> row;
        row.reserve(tokens.size());
        for (const auto& tok : tokens) {
            const auto cell =
                parse_cell(tok, path.filename().string() + " line " + std::to_string(i + 1));
            row.push_back(cell.value_or(PanelMatrix::missing_value()));
        }
        rows.push_back(std::move(row));
    }
    try {
        return PanelMatrix::from_rows(rows);
    } catch (const DataError& e) {
        throw DataError(path.filename().string() + ": " + e.what());
    }
}

std::vector<std::string> load_text_table(const std::filesystem::path& path, bool header) {
    const auto lines = read_lines(path, header);
    std::vector<std::string> out;
    out.reserve(lines.size());
    for (const auto& line : lines) {
        // Keep only the first column when the file carries extra fields.
        const std::size_t tab = line.find('\t');
        out.push_back(trimmed(tab == std::string::npos ? line : line.substr(0, tab)));
    }
    return out;
}

void write_panel(const PanelMatrix& panel, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    char buf[64];
    for (std::size_t i = 0; i < panel.n_assets(); ++i) {
        for (std::size_t s = 0; s < panel.n_dates(); ++s) {
            if (s > 0) out << '\t';
            const double v = panel(i, s);
            if (PanelMatrix::is_missing(v)) {
                out << '?';
            } else {
                std::snprintf(buf, sizeof(buf), "%.17g", v);
                out << buf;
            }
        }
        out << '\n';
    }
    if (!out) throw DataError("write failed for " + path.string());
}

LoadedDataset load_dataset(const std::filesystem::path& dir, bool header) {
    if (!std::filesystem::is_directory(dir)) {
        throw DataError("data directory not found: " + dir.string());
    }
    LoadedDataset loaded;
    auto& data = loaded.data;
    auto& report = loaded.report;

    const auto require = [&](const char* name) {
        const auto path = dir / name;
        if (!std::filesystem::exists(path)) {
            throw DataError("missing required data file: " + path.string());
        }
        PanelMatrix panel = load_numeric_panel(path, header);
        report.missing_cells[name] = panel.count_missing();
        return panel;
    };

    data.close = require(kCloseFile);
    data.open = require(kOpenFile);
    data.high = require(kHighFile);
    data.low = require(kLowFile);
    data.volume = require(kVolumeFile);
    data.cap = require(kCapFile);

    const auto name_path = dir / kNameFile;
    if (!std::filesystem::exists(name_path)) {
        throw DataError("missing required data file: " + name_path.string());
    }
    data.names = load_text_table(name_path, header);

    const auto mnbl_path = dir / kMinableFile;
    if (std::filesystem::exists(mnbl_path)) {
        data.minable = load_text_table(mnbl_path, header);
    } else {
        report.warnings.push_back("minable-flag file absent (" + std::string(kMinableFile) +
                                  "); continuing without it");
    }

    const std::size_t n_assets = data.close.n_assets();
    const std::size_t n_dates = data.close.n_dates();
    const auto check_shape = [&](const PanelMatrix& p, const char* name) {
        if (p.n_assets() != n_assets || p.n_dates() != n_dates) {
            std::ostringstream msg;
            msg << name << " is " << p.n_assets() << "x" << p.n_dates() << " but " << kCloseFile
                << " is " << n_assets << "x" << n_dates;
            throw DataError(msg.str());
        }
    };
    check_shape(data.open, kOpenFile);
    check_shape(data.high, kHighFile);
    check_shape(data.low, kLowFile);
    check_shape(data.volume, kVolumeFile);
    check_shape(data.cap, kCapFile);
    if (data.names.size() != n_assets) {
        throw DataError(std::string(kNameFile) + " has " + std::to_string(data.names.size()) +
                        " rows but panels have " + std::to_string(n_assets));
    }
    if (data.minable && data.minable->size() != n_assets) {
        throw DataError(std::string(kMinableFile) + " has " +
                        std::to_string(data.minable->size()) + " rows but panels have " +
                        std::to_string(n_assets));
    }

    report.n_assets = n_assets;
    report.n_dates = n_dates;
    return loaded;
}

}  // namespace cryptoarb
