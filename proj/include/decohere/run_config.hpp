// run_config.hpp: command-line run configuration, presets and the flat
// key=value settings format shared by config files, preset files and the
// metadata line written into every CSV.

#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decohere/bath_model.hpp"
#include "decohere/quadrature.hpp"
#include "decohere/scenarios.hpp"

namespace decohere::cli {

enum class Command { free, pulsed, timeseries, tsweep, isweep, crossover, solve };

std::string to_string(Command c);
std::optional<Command> parse_command(std::string_view text);

using Settings = std::map<std::string, std::string>;

struct RunConfig {
    Command command{Command::free};

    SpectralDensity density{-1.0, 0.25, 1.0, 80.0};
    double temperature{0.0};
    double gamma_1f{0.5};     // tsweep: 1/f coupling
    double gamma_ohmic{0.1};  // tsweep: Ohmic coupling

    double interval{0.025};
    long half_cycles{1};
    double time{5.0};
    long n_max{100};
    std::vector<long> half_cycle_list;  // isweep; empty selects the default list
    double t_min{0.1};
    double t_max{1000.0};
    int t_points{30};
    bool closed_form{false};

    double target{0.1};
    SuppressionMeasure measure{SuppressionMeasure::coherence_loss};
    bool cpb{false};  // build the bath from Cooper-pair-box SI parameters
    CooperPairBoxParams cpb_params;

    QuadratureConfig quadrature;
    int precision{9};

    // Not part of the settings map.
    std::string output_path;
    std::string fine_output_path;

    // Every setting except output paths, values in shortest round-trip form.
    Settings to_settings() const;

    // Applies `s` over the defaults. Throws std::invalid_argument on an unknown
    // key or unparsable value.
    static RunConfig from_settings(const Settings& s);

    // "config: command=free nu=-1 ..." (no leading '#').
    std::string metadata_line() const;
    // Accepts the line with or without the leading "# ".
    static RunConfig from_metadata_line(std::string_view line);
};

const std::vector<std::string>& known_keys();

// Accepts dashes or underscores; returns the canonical underscore key.
std::string canonical_key(std::string_view key);

// Flat key=value lines, '#' comments, blank lines ignored. Throws
// std::invalid_argument naming `source` and the line on malformed input or an
// unknown key.
Settings parse_key_value(std::istream& in, std::string_view source);

std::vector<std::string> preset_names();
std::optional<Settings> builtin_preset(std::string_view name);

// $DECOHERE_PRESETS_DIR/<name>.conf when that file exists, else the built-in
// preset. Throws std::invalid_argument for an unknown name.
Settings load_preset(std::string_view name);

}  // namespace decohere::cli
