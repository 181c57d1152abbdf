// cli.hpp: argument parsing and dispatch for the decohere command-line tool.
//
// Exit codes: 0 success, 2 invalid parameters or usage, 3 quadrature
// non-convergence (single evaluations) or no solution, 4 I/O failure. Sweeps
// with flagged cells still exit 0; the flags are in the CSV.

#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "decohere/run_config.hpp"

namespace decohere::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numerical = 3;
inline constexpr int exit_io = 4;

struct ParseOutcome {
    std::optional<RunConfig> config;  // empty when parsing ended the run
    int exit_code{exit_ok};
    std::string message;              // usage or help text
};

// Precedence: built-in defaults < --preset < --config file < explicit flags.
ParseOutcome parse_args(int argc, const char* const* argv);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_args followed by run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace decohere::cli
