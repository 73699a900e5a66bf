#include "dimerchain/csv.hpp"

#include <cstdio>

namespace dimerchain {

std::string CsvWriter::quote(const std::string& cell) {
    bool needs = cell.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string CsvWriter::format(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void CsvWriter::field(const std::string& text) {
    if (!first_in_row_) out_ << ',';
    out_ << quote(text);
    first_in_row_ = false;
}

void CsvWriter::field(double value) { field(format(value)); }

void CsvWriter::field(long value) { field(std::to_string(value)); }

void CsvWriter::end_row() {
    out_ << "\r\n"; // RFC-4180 line ending
    first_in_row_ = true;
}

void CsvWriter::row_strings(const std::vector<std::string>& cells) {
    for (const auto& c : cells) field(c);
    end_row();
}

} // namespace dimerchain
