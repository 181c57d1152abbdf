// csv.hpp: CSV rendering of scenario tables.
//
// Layout: one header line "label (unit),...,converged (bool)", data rows in
// scientific notation with `precision` significant digits and a compact
// exponent (8.416e-4), LF endings, then "# ..." comment lines and a final
// "# converged: all" or "# converged: flagged (row,col) ...". A table without
// rows is rendered as its header line alone.

#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>

#include "decohere/scenarios.hpp"

namespace decohere {

std::string format_number(double value, int precision);

std::size_t emit_csv(const ScenarioTable& table, std::ostream& sink, int precision = 9,
                     std::span<const std::string> comments = {});

}  // namespace decohere
