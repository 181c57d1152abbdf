#include "decohere/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace decohere::cli {

namespace {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string_view key, const std::string& text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end || text.empty())
        throw std::invalid_argument("setting '" + std::string(key) + "': not a number: '" + text + "'");
    return v;
}

long to_long(std::string_view key, const std::string& text) {
    long v = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end || text.empty())
        throw std::invalid_argument("setting '" + std::string(key) + "': not an integer: '" + text + "'");
    return v;
}

bool to_bool(std::string_view key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw std::invalid_argument("setting '" + std::string(key) + "': not a boolean: '" + text + "'");
}

struct Field {
    std::string key;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&)> set;
};

Field real(std::string key, double RunConfig::*member) {
    return {key, [member](const RunConfig& c) { return format_double(c.*member); },
            [key, member](RunConfig& c, const std::string& v) { c.*member = to_double(key, v); }};
}

template <class Get, class Set>
Field field(std::string key, Get get, Set set) {
    return {std::move(key), get, set};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back(field(
            "command", [](const RunConfig& c) { return to_string(c.command); },
            [](RunConfig& c, const std::string& v) {
                const auto cmd = parse_command(v);
                if (!cmd) throw std::invalid_argument("setting 'command': unknown command '" + v + "'");
                c.command = *cmd;
            }));
        f.push_back(field(
            "nu", [](const RunConfig& c) { return format_double(c.density.exponent); },
            [](RunConfig& c, const std::string& v) { c.density.exponent = to_double("nu", v); }));
        f.push_back(field(
            "gamma", [](const RunConfig& c) { return format_double(c.density.coupling); },
            [](RunConfig& c, const std::string& v) { c.density.coupling = to_double("gamma", v); }));
        f.push_back(field(
            "ir", [](const RunConfig& c) { return format_double(c.density.ir_cutoff); },
            [](RunConfig& c, const std::string& v) { c.density.ir_cutoff = to_double("ir", v); }));
        f.push_back(field(
            "uv", [](const RunConfig& c) { return format_double(c.density.uv_cutoff); },
            [](RunConfig& c, const std::string& v) { c.density.uv_cutoff = to_double("uv", v); }));
        f.push_back(real("temp", &RunConfig::temperature));
        f.push_back(real("gamma_1f", &RunConfig::gamma_1f));
        f.push_back(real("gamma_ohmic", &RunConfig::gamma_ohmic));
        f.push_back(real("dt", &RunConfig::interval));
        f.push_back(field(
            "n", [](const RunConfig& c) { return std::to_string(c.half_cycles); },
            [](RunConfig& c, const std::string& v) { c.half_cycles = to_long("n", v); }));
        f.push_back(real("t", &RunConfig::time));
        f.push_back(field(
            "n_max", [](const RunConfig& c) { return std::to_string(c.n_max); },
            [](RunConfig& c, const std::string& v) { c.n_max = to_long("n_max", v); }));
        f.push_back(field(
            "n_list",
            [](const RunConfig& c) {
                if (c.half_cycle_list.empty()) return std::string("default");
                std::string s;
                for (std::size_t i = 0; i < c.half_cycle_list.size(); ++i)
                    s += (i ? "," : "") + std::to_string(c.half_cycle_list[i]);
                return s;
            },
            [](RunConfig& c, const std::string& v) {
                c.half_cycle_list.clear();
                if (v == "default") return;
                std::stringstream ss(v);
                std::string item;
                while (std::getline(ss, item, ',')) c.half_cycle_list.push_back(to_long("n_list", trim(item)));
            }));
        f.push_back(real("t_min", &RunConfig::t_min));
        f.push_back(real("t_max", &RunConfig::t_max));
        f.push_back(field(
            "t_points", [](const RunConfig& c) { return std::to_string(c.t_points); },
            [](RunConfig& c, const std::string& v) { c.t_points = static_cast<int>(to_long("t_points", v)); }));
        f.push_back(field(
            "closed_form", [](const RunConfig& c) { return std::string(c.closed_form ? "true" : "false"); },
            [](RunConfig& c, const std::string& v) { c.closed_form = to_bool("closed_form", v); }));
        f.push_back(real("target", &RunConfig::target));
        f.push_back(field(
            "measure", [](const RunConfig& c) { return to_string(c.measure); },
            [](RunConfig& c, const std::string& v) { c.measure = parse_suppression_measure(v); }));
        f.push_back(field(
            "bath", [](const RunConfig& c) { return std::string(c.cpb ? "cpb" : "natural"); },
            [](RunConfig& c, const std::string& v) {
                if (v != "cpb" && v != "natural")
                    throw std::invalid_argument("setting 'bath': expected natural or cpb, got '" + v + "'");
                c.cpb = v == "cpb";
            }));
        f.push_back(field(
            "ec_uev", [](const RunConfig& c) { return format_double(c.cpb_params.charging_energy_uev); },
            [](RunConfig& c, const std::string& v) { c.cpb_params.charging_energy_uev = to_double("ec_uev", v); }));
        f.push_back(field(
            "alpha_e2", [](const RunConfig& c) { return format_double(c.cpb_params.noise_constant_e2); },
            [](RunConfig& c, const std::string& v) { c.cpb_params.noise_constant_e2 = to_double("alpha_e2", v); }));
        f.push_back(field(
            "ir_hz", [](const RunConfig& c) { return format_double(c.cpb_params.ir_hz); },
            [](RunConfig& c, const std::string& v) { c.cpb_params.ir_hz = to_double("ir_hz", v); }));
        f.push_back(field(
            "uv_hz", [](const RunConfig& c) { return format_double(c.cpb_params.uv_hz); },
            [](RunConfig& c, const std::string& v) { c.cpb_params.uv_hz = to_double("uv_hz", v); }));
        f.push_back(field(
            "kt_uev", [](const RunConfig& c) { return format_double(c.cpb_params.temperature_uev); },
            [](RunConfig& c, const std::string& v) { c.cpb_params.temperature_uev = to_double("kt_uev", v); }));
        f.push_back(field(
            "abs_tol", [](const RunConfig& c) { return format_double(c.quadrature.abs_tol); },
            [](RunConfig& c, const std::string& v) { c.quadrature.abs_tol = to_double("abs_tol", v); }));
        f.push_back(field(
            "rel_tol", [](const RunConfig& c) { return format_double(c.quadrature.rel_tol); },
            [](RunConfig& c, const std::string& v) { c.quadrature.rel_tol = to_double("rel_tol", v); }));
        f.push_back(field(
            "max_subdivisions", [](const RunConfig& c) { return std::to_string(c.quadrature.max_subdivisions); },
            [](RunConfig& c, const std::string& v) {
                const long n = to_long("max_subdivisions", v);
                if (n < 1) throw std::invalid_argument("setting 'max_subdivisions': must be positive");
                c.quadrature.max_subdivisions = static_cast<std::size_t>(n);
            }));
        f.push_back(field(
            "osc_resolution", [](const RunConfig& c) { return format_double(c.quadrature.oscillation_resolution); },
            [](RunConfig& c, const std::string& v) {
                c.quadrature.oscillation_resolution = to_double("osc_resolution", v);
            }));
        f.push_back(field(
            "precision", [](const RunConfig& c) { return std::to_string(c.precision); },
            [](RunConfig& c, const std::string& v) { c.precision = static_cast<int>(to_long("precision", v)); }));
        return f;
    }();
    return table;
}

const std::map<std::string, Settings, std::less<>>& presets() {
    static const std::map<std::string, Settings, std::less<>> table{
        {"fig1-1f",
         {{"nu", "-1"}, {"gamma", "0.25"}, {"ir", "1"}, {"uv", "80"}, {"temp", "0"}, {"dt", "0.025"},
          {"n", "100"}, {"t", "5"}, {"n_max", "100"}}},
        {"fig1-ohmic",
         {{"nu", "1"}, {"gamma", "0.05"}, {"ir", "1"}, {"uv", "10"}, {"temp", "0"}, {"dt", "0.025"},
          {"n", "100"}, {"t", "5"}, {"n_max", "100"}}},
        {"fig3",
         {{"nu", "-1"}, {"gamma", "0.5"}, {"gamma_1f", "0.5"}, {"gamma_ohmic", "0.1"}, {"ir", "1"}, {"uv", "20"},
          {"dt", "0.125"}, {"t", "4"}, {"n", "16"}, {"t_min", "0.1"}, {"t_max", "1000"}, {"t_points", "30"}}},
        {"fig4-t10",
         {{"nu", "-1"}, {"gamma", "0.5"}, {"ir", "0.01"}, {"uv", "100"}, {"temp", "10"}, {"t", "2"}}},
        {"fig4-t1000",
         {{"nu", "-1"}, {"gamma", "0.5"}, {"ir", "0.01"}, {"uv", "100"}, {"temp", "1000"}, {"t", "2"}}},
        {"cpb",
         {{"bath", "cpb"}, {"ec_uev", "122"}, {"alpha_e2", "1.69e-06"}, {"ir_hz", "100"}, {"uv_hz", "10000000000"},
          {"kt_uev", "5"}, {"n", "1"}, {"target", "0.1"}, {"measure", "coherence-loss"}}},
    };
    return table;
}

}  // namespace

std::string to_string(Command c) {
    switch (c) {
        case Command::free: return "free";
        case Command::pulsed: return "pulsed";
        case Command::timeseries: return "timeseries";
        case Command::tsweep: return "tsweep";
        case Command::isweep: return "isweep";
        case Command::crossover: return "crossover";
        case Command::solve: return "solve";
    }
    return "unknown";
}

std::optional<Command> parse_command(std::string_view text) {
    for (auto c : {Command::free, Command::pulsed, Command::timeseries, Command::tsweep, Command::isweep,
                   Command::crossover, Command::solve})
        if (to_string(c) == text) return c;
    return std::nullopt;
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& f : fields()) k.push_back(f.key);
        return k;
    }();
    return keys;
}

std::string canonical_key(std::string_view key) {
    std::string k(key);
    std::replace(k.begin(), k.end(), '-', '_');
    return k;
}

Settings RunConfig::to_settings() const {
    Settings s;
    for (const auto& f : fields()) s[f.key] = f.get(*this);
    return s;
}

RunConfig RunConfig::from_settings(const Settings& s) {
    RunConfig c;
    for (const auto& [key, value] : s) {
        const auto k = canonical_key(key);
        const auto it = std::find_if(fields().begin(), fields().end(), [&](const Field& f) { return f.key == k; });
        if (it == fields().end()) throw std::invalid_argument("unknown setting '" + key + "'");
        it->set(c, value);
    }
    return c;
}

std::string RunConfig::metadata_line() const {
    std::string line = "config:";
    for (const auto& f : fields()) line += " " + f.key + "=" + f.get(*this);
    return line;
}

RunConfig RunConfig::from_metadata_line(std::string_view line) {
    std::string text = trim(line);
    if (text.starts_with("#")) text = trim(std::string_view(text).substr(1));
    if (!text.starts_with("config:")) throw std::invalid_argument("metadata line must start with 'config:'");
    std::istringstream in(text.substr(7));
    Settings s;
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("metadata token without '=': " + token);
        s[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return from_settings(s);
}

Settings parse_key_value(std::istream& in, std::string_view source) {
    Settings s;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(std::string_view(raw).substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const auto where = std::string(source) + ":" + std::to_string(line_no);
        if (eq == std::string::npos) throw std::invalid_argument(where + ": expected key=value");
        const auto key = canonical_key(trim(std::string_view(line).substr(0, eq)));
        const auto& keys = known_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw std::invalid_argument(where + ": unknown key '" + key + "'");
        s[key] = trim(std::string_view(line).substr(eq + 1));
    }
    return s;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : presets()) names.push_back(name);
    return names;
}

std::optional<Settings> builtin_preset(std::string_view name) {
    const auto it = presets().find(name);
    if (it == presets().end()) return std::nullopt;
    return it->second;
}

Settings load_preset(std::string_view name) {
    if (const char* dir = std::getenv("DECOHERE_PRESETS_DIR"); dir && *dir) {
        const auto path = std::filesystem::path(dir) / (std::string(name) + ".conf");
        if (std::filesystem::exists(path)) {
            std::ifstream in(path);
            if (!in) throw std::invalid_argument("cannot read preset file " + path.string());
            return parse_key_value(in, path.string());
        }
    }
    if (auto p = builtin_preset(name)) return *p;
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

}  // namespace decohere::cli
