#include "riskaverse/io/csv.hpp"

#include <cstdio>
#include <fstream>
#include <utility>

#include "riskaverse/errors.hpp"

namespace riskaverse {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size()) {
        throw ValidationError("csv: row width does not match the header");
    }
    rows_.push_back(cells);
}

std::string CsvTable::str() const {
    std::string out;
    const auto join = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    join(header_);
    for (const auto& row : rows_) join(row);
    return out;
}

void CsvTable::write_file(const std::string& path) const {
    std::ofstream stream(path, std::ios::binary);
    if (!stream) throw Error("csv: cannot open " + path + " for writing");
    stream << str();
}

} // namespace riskaverse
