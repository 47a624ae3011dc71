#include "casimir/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir::csv {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

int Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

Table read_string(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split(line);
        if (t.header.empty()) {
            t.header = cells;
            continue;
        }
        if (cells.size() != t.header.size())
            throw InputError("csv line " + std::to_string(lineno) + ": expected " +
                             std::to_string(t.header.size()) + " cells, got " +
                             std::to_string(cells.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            std::size_t pos = 0;
            double v = 0.0;
            try {
                v = std::stod(c, &pos);
            } catch (const std::exception&) {
                throw InputError("csv line " + std::to_string(lineno) +
                                 ": not a number: '" + c + "'");
            }
            if (pos != c.size())
                throw InputError("csv line " + std::to_string(lineno) +
                                 ": trailing junk in '" + c + "'");
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw InputError("csv: missing header line");
    return t;
}

Table read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return read_string(buf.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string format_row(const std::vector<double>& row, int precision) {
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < row.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, row[i]);
        if (i) out += ',';
        out += buf;
    }
    return out;
}

void write_file(const std::string& path, const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows, int precision) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& r : rows) out << format_row(r, precision) << '\n';
}

} // namespace casimir::csv
