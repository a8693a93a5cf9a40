#pragma once

#include <string>
#include <vector>

namespace sanas {

// Minimal CSV handling for the project's own artifacts: comma separator,
// double-quote quoting with "" escapes, '#' comment lines skipped by readers.

std::vector<std::string> csv_split(const std::string& line);
std::string csv_escape(const std::string& field);
std::string csv_join(const std::vector<std::string>& fields);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Column index by header name; throws ParseError when absent.
    std::size_t column(const std::string& name) const;
};

// Throws InvalidConfig when the file cannot be opened, ParseError on ragged
// rows or a missing header.
CsvTable read_csv(const std::string& path);

std::string format_double(double v);  // shortest round-trip decimal form

} // namespace sanas
