#include "dce/csv.hpp"

#include "dce/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace dce {

std::string format_double(double value) {
    if (std::isnan(value))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

std::string escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

struct CellFormatter {
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const { return escape(v); }
};

} // namespace

std::string to_csv(const CsvTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i)
            out += ',';
        out += escape(table.header[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += std::visit(CellFormatter{}, row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const CsvTable& table, const std::string& path) {
    const std::string text = to_csv(table);
    if (path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open '" + path + "' for writing");
    out << text;
    if (!out)
        throw Error("failed writing '" + path + "'");
}

} // namespace dce
