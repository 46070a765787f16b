// SPDX-License-Identifier: Apache-2.0
#ifndef AFESCALE_APP_CSV_HPP
#define AFESCALE_APP_CSV_HPP

#include <string>
#include <vector>

namespace afescale::app {

/// Shortest round-trip decimal form of a double ('.' decimal point, "inf"
/// for infinities); identical bytes for identical values on every rerun.
std::string format_number(double value);

/// CSV accumulator. The first line carries the schema tag as a comment, the
/// second the header; cells containing separators are quoted RFC-4180 style.
class CsvBuilder {
public:
    CsvBuilder(std::string schema, std::vector<std::string> columns);

    void add_row(const std::vector<std::string>& cells);
    const std::string& str() const { return text_; }

private:
    std::string text_;
    std::size_t column_count_;
};

/// Writes through a temp file in the target directory, then renames.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace afescale::app

#endif
