#pragma once

// Minimal CSV emission with a fixed, locale-independent number format.

#include <string>
#include <variant>
#include <vector>

namespace dce {

using CsvCell = std::variant<double, long, std::string>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<CsvCell>> rows;
};

// 17 significant digits, round-trips every double. NaN prints as "nan".
std::string format_double(double value);

std::string to_csv(const CsvTable& table);

// Path "-" writes to stdout. Throws Error on I/O failure.
void write_csv(const CsvTable& table, const std::string& path);

} // namespace dce
