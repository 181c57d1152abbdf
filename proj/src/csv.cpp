#include "decohere/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace decohere {

std::string format_number(double value, int precision) {
    if (precision < 1 || precision > 17) throw std::invalid_argument("format_number: precision must be in [1, 17]");
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", precision - 1, value);
    std::string s(buf);
    const auto e = s.find('e');
    const int exponent = std::atoi(s.c_str() + e + 1);
    return s.substr(0, e) + "e" + std::to_string(exponent);
}

std::size_t emit_csv(const ScenarioTable& table, std::ostream& sink, int precision,
                     std::span<const std::string> comments) {
    std::string text;
    const auto& cols = table.columns();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c) text += ',';
        text += cols[c].label + " (" + (cols[c].unit.empty() ? std::string("1") : cols[c].unit) + ")";
    }
    if (!cols.empty()) text += ',';
    text += "converged (bool)\n";

    if (table.row_count() > 0) {
        std::string flagged;
        for (std::size_t r = 0; r < table.row_count(); ++r) {
            const auto& row = table.rows()[r];
            const auto& ok = table.converged()[r];
            bool row_ok = true;
            for (std::size_t c = 0; c < row.size(); ++c) {
                text += format_number(row[c], precision);
                text += ',';
                if (!ok[c]) {
                    row_ok = false;
                    flagged += " (" + std::to_string(r) + "," + std::to_string(c) + ")";
                }
            }
            text += row_ok ? "1\n" : "0\n";
        }
        for (const auto& line : comments) text += "# " + line + "\n";
        text += flagged.empty() ? std::string("# converged: all\n") : "# converged: flagged" + flagged + "\n";
    }

    sink.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!sink) throw std::ios_base::failure("emit_csv: write failed");
    return text.size();
}

}  // namespace decohere
