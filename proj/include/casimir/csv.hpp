#pragma once

#include <string>
#include <vector>

namespace casimir::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const; // -1 if absent
};

/// Read a numeric CSV with a mandatory header line. Throws InputError on
/// malformed content.
Table read_file(const std::string& path);
Table read_string(const std::string& text);

/// Write rows with "%.{precision}g" formatting; deterministic output.
void write_file(const std::string& path, const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows, int precision = 12);

std::string format_row(const std::vector<double>& row, int precision = 12);

} // namespace casimir::csv
