// SPDX-License-Identifier: Apache-2.0
#include "afescale/app/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace afescale::app {

std::string format_number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buffer[40];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

namespace {
std::string escape_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}
} // namespace

CsvBuilder::CsvBuilder(std::string schema, std::vector<std::string> columns)
    : column_count_(columns.size()) {
    text_ = "# schema=" + schema + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i > 0) text_ += ',';
        text_ += escape_cell(columns[i]);
    }
    text_ += '\n';
}

void CsvBuilder::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != column_count_) {
        throw std::logic_error("csv row width does not match the header");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) text_ += ',';
        text_ += escape_cell(cells[i]);
    }
    text_ += '\n';
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path());
    }
    const fs::path temp = target.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + temp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + temp.string());
    }
    fs::rename(temp, target);
}

} // namespace afescale::app
