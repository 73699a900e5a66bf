#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dimerchain {

/// Minimal RFC-4180 CSV writer with deterministic number formatting
/// ("%.17g", so reruns are bit-identical).
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string>& names) { row_strings(names); }

    void field(const std::string& text);
    void field(double value);
    void field(long value);
    void end_row();

    void row_strings(const std::vector<std::string>& cells);

    static std::string quote(const std::string& cell);
    static std::string format(double value);

private:
    std::ostream& out_;
    bool first_in_row_ = true;
};

} // namespace dimerchain
