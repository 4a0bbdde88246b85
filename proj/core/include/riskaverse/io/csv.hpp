#pragma once

#include <string>
#include <vector>

namespace riskaverse {

/// Floats serialized with 12 significant digits; identical inputs give
/// byte-identical files.
std::string format_double(double v);

/// One header row, comma separation, "%.12g" floats, trailing newline per row.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(const std::vector<double>& values);
    void add_row(const std::vector<std::string>& cells);

    std::string str() const;
    void write_file(const std::string& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace riskaverse
