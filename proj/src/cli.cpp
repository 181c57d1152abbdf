#include "decohere/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>

#include "decohere/closed_form.hpp"
#include "decohere/csv.hpp"
#include "decohere/decoherence.hpp"
#include "decohere/scenarios.hpp"
#include "decohere/units.hpp"

namespace decohere::cli {

namespace {

void validate(const RunConfig& c) {
    c.quadrature.validate();
    if (c.precision < 1 || c.precision > 17) throw std::invalid_argument("precision must be in [1, 17]");
    if (c.cpb) {
        c.cpb_params.validate();
    } else {
        BathSpec{c.density, c.temperature}.validate();
    }
    switch (c.command) {
        case Command::free:
            if (!(c.time >= 0.0)) throw std::invalid_argument("t must be nonnegative");
            break;
        case Command::pulsed:
            PulseSchedule(c.interval, c.half_cycles);
            break;
        case Command::timeseries:
            if (!(c.interval > 0.0)) throw std::invalid_argument("dt must be positive");
            if (c.n_max < 0) throw std::invalid_argument("n-max must be nonnegative");
            break;
        case Command::tsweep:
            SpectralDensity::one_over_f(c.gamma_1f, c.density.ir_cutoff, c.density.uv_cutoff);
            SpectralDensity::ohmic(c.gamma_ohmic, c.density.ir_cutoff, c.density.uv_cutoff);
            if (!(c.interval > 0.0)) throw std::invalid_argument("dt must be positive");
            if (c.t_points < 1) throw std::invalid_argument("t-points must be positive");
            if (!(c.t_min > 0.0 && c.t_max >= c.t_min)) throw std::invalid_argument("need 0 < t-min <= t-max");
            break;
        case Command::isweep:
            if (!(c.time > 0.0)) throw std::invalid_argument("t must be positive");
            for (long n : c.half_cycle_list)
                if (n < 1) throw std::invalid_argument("n-list entries must be positive");
            break;
        case Command::crossover:
            if (!(c.time >= 0.0)) throw std::invalid_argument("t must be nonnegative");
            break;
        case Command::solve:
            if (!(c.target > 0.0 && c.target < 1.0)) throw std::invalid_argument("target must lie in (0, 1)");
            if (c.half_cycles < 1) throw std::invalid_argument("n must be positive");
            break;
    }
}

BathSpec bath_of(const RunConfig& c) {
    if (c.cpb) return cooper_pair_box_bath(c.cpb_params);
    return BathSpec{c.density, c.temperature};
}

std::vector<double> temperature_grid(const RunConfig& c) {
    if (c.t_points == 1) return {c.t_min};
    std::vector<double> grid(static_cast<std::size_t>(c.t_points));
    const double lo = std::log10(c.t_min);
    const double hi = std::log10(c.t_max);
    for (int i = 0; i < c.t_points; ++i) grid[i] = std::pow(10.0, lo + (hi - lo) * i / (c.t_points - 1));
    return grid;
}

int write_table(const ScenarioTable& table, const std::string& path, std::ostream& out, const RunConfig& c,
                const std::vector<std::string>& notes, std::ostream& err) {
    std::vector<std::string> comments = notes;
    comments.push_back(c.metadata_line());
    try {
        if (path.empty() || path == "-") {
            emit_csv(table, out, c.precision, comments);
            out.flush();
            if (!out) throw std::ios_base::failure("write to stdout failed");
        } else {
            std::ofstream file(path, std::ios::binary);
            if (!file) throw std::ios_base::failure("cannot open " + path);
            emit_csv(table, file, c.precision, comments);
            file.close();
            if (!file) throw std::ios_base::failure("write to " + path + " failed");
        }
    } catch (const std::ios_base::failure& e) {
        err << "decohere: I/O error: " << e.what() << "\n";
        return exit_io;
    }
    return exit_ok;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto& q = c.quadrature;
    switch (c.command) {
        case Command::free: {
            const auto bath = bath_of(c);
            const auto v = gamma_free(bath, c.time, q);
            ScenarioTable table("free", {{"t", "time"}, {"gamma_free", ""}, {"coherence_free", ""},
                                         {"error_estimate", ""}, {"evaluations", ""}});
            table.add_row({c.time, v.gamma, v.coherence_magnitude, v.error_estimate, static_cast<double>(v.evaluations)},
                          {true, v.converged, v.converged, v.converged, true});
            const int rc = write_table(table, c.output_path, out, c, {}, err);
            if (rc != exit_ok) return rc;
            if (!v.converged) {
                err << "decohere: quadrature did not converge\n";
                return exit_numerical;
            }
            return exit_ok;
        }
        case Command::pulsed: {
            const auto bath = bath_of(c);
            const PulseSchedule sched(c.interval, c.half_cycles);
            double closed = 0.0;
            ApproximationValidity validity;
            if (c.closed_form) {
                if (bath.density.exponent != -1.0)
                    throw std::invalid_argument("--closed-form needs a 1/f bath (nu = -1)");
                if (!(bath.density.uv_cutoff * c.interval < std::numbers::pi))
                    throw std::invalid_argument("--closed-form undefined for uv * dt >= pi");
                closed = gamma_pulsed_t0_closed(bath.density, sched);
                if (bath.temperature > 0.0)
                    closed += gamma_pulsed_thermal_closed(bath.density.coupling, c.interval, bath.temperature,
                                                          sched.total_time());
                validity = check_validity(bath.density, c.interval, bath.temperature);
            }
            const auto p = gamma_pulsed(bath, sched, q);
            const auto f = gamma_free(bath, sched.total_time(), q);
            const double ratio =
                f.gamma >= 10.0 * q.abs_tol ? p.gamma / f.gamma : std::numeric_limits<double>::quiet_NaN();
            std::vector<Column> cols{{"N", ""},          {"dt", "time"},        {"t", "time"},
                                     {"gamma_pulsed", ""}, {"coherence_pulsed", ""}, {"gamma_free", ""},
                                     {"coherence_free", ""}, {"ratio", ""},         {"error_estimate", ""}};
            std::vector<double> row{static_cast<double>(c.half_cycles), c.interval, sched.total_time(), p.gamma,
                                    p.coherence_magnitude, f.gamma, f.coherence_magnitude, ratio, p.error_estimate};
            std::vector<bool> ok{true, true, true, p.converged, p.converged, f.converged, f.converged,
                                 p.converged && f.converged, p.converged};
            std::vector<std::string> notes;
            if (c.closed_form) {
                cols.push_back({"gamma_closed", ""});
                row.push_back(closed);
                ok.push_back(true);
                notes.push_back("closed form regime: " + to_string(validity.regime));
                for (const auto& r : validity.reasons) notes.push_back("closed form: " + r);
            }
            ScenarioTable table("pulsed", cols);
            table.add_row(row, ok);
            const int rc = write_table(table, c.output_path, out, c, notes, err);
            if (rc != exit_ok) return rc;
            if (!p.converged || !f.converged) {
                err << "decohere: quadrature did not converge\n";
                return exit_numerical;
            }
            return exit_ok;
        }
        case Command::timeseries: {
            const auto series = time_series(bath_of(c), c.interval, c.n_max, q);
            int rc = write_table(series.pulses, c.output_path, out, c, {}, err);
            if (rc == exit_ok && !c.fine_output_path.empty())
                rc = write_table(series.free_fine, c.fine_output_path, out, c, {}, err);
            return rc;
        }
        case Command::tsweep: {
            const auto one_over_f = SpectralDensity::one_over_f(c.gamma_1f, c.density.ir_cutoff, c.density.uv_cutoff);
            const auto ohmic = SpectralDensity::ohmic(c.gamma_ohmic, c.density.ir_cutoff, c.density.uv_cutoff);
            const auto table = temperature_sweep(one_over_f, ohmic, c.interval, c.time, temperature_grid(c), q);
            return write_table(table, c.output_path, out, c, {}, err);
        }
        case Command::isweep: {
            const auto bath = bath_of(c);
            const auto counts = c.half_cycle_list.empty() ? default_interval_counts() : c.half_cycle_list;
            const auto table = interval_sweep(bath.density, bath.temperature, c.time, counts, q);
            return write_table(table, c.output_path, out, c, {}, err);
        }
        case Command::crossover: {
            const auto bath = bath_of(c);
            const auto r = crossover_interval(bath.density, bath.temperature, c.time, q);
            const double nan = std::numeric_limits<double>::quiet_NaN();
            ScenarioTable table("crossover",
                                {{"t", "time"}, {"found", "bool"}, {"dt_crossover", "time"}, {"uv_dt_crossover", ""},
                                 {"sign_changes", ""}});
            table.add_row({c.time, r.interval ? 1.0 : 0.0, r.interval.value_or(nan),
                           r.interval ? *r.interval * bath.density.uv_cutoff : nan,
                           static_cast<double>(r.sign_changes)});
            return write_table(table, c.output_path, out, c,
                               {"crossover: " + r.reason, "crossover: readout time held fixed while dt varies"}, err);
        }
        case Command::solve: {
            const auto bath = bath_of(c);
            const auto r = solve_interval_for_suppression(bath, c.half_cycles, c.target, q, c.measure);
            std::vector<Column> cols{{"N", ""},        {"target", ""},         {"dt", c.cpb ? "s" : "time"},
                                     {"achieved", ""}, {"multiple_roots", "bool"}};
            std::vector<double> row{static_cast<double>(c.half_cycles), c.target, r.interval, r.achieved,
                                    r.multiple_roots ? 1.0 : 0.0};
            if (c.cpb) {
                cols.push_back({"dt_ns", "ns"});
                row.push_back(r.interval / units::seconds_per_ns);
            }
            ScenarioTable table("solve", cols);
            table.add_row(row);
            std::vector<std::string> notes{"measure: " + to_string(c.measure)};
            if (c.cpb) {
                std::ostringstream s;
                s << "cpb bath: gamma = 2 E_C^2 (alpha/e^2) / hbar^2 = " << bath.density.coupling
                  << " rad^2/s^2, ir = " << bath.density.ir_cutoff << " rad/s, uv = " << bath.density.uv_cutoff
                  << " rad/s, T = " << bath.temperature << " rad/s";
                notes.push_back(s.str());
            }
            return write_table(table, c.output_path, out, c, notes, err);
        }
    }
    return exit_usage;
}

}  // namespace

ParseOutcome parse_args(int argc, const char* const* argv) {
    CLI::App app{"Qubit dephasing under periodic dynamical decoupling for 1/f and Ohmic boson baths", "decohere"};
    app.require_subcommand(1);

    static const std::map<std::string, std::string> flag_help{
        {"nu", "Spectral exponent (-1: 1/f, 1: Ohmic)"},
        {"gamma", "Coupling strength"},
        {"ir", "IR cutoff"},
        {"uv", "UV cutoff"},
        {"temp", "Temperature (natural units)"},
        {"gamma_1f", "tsweep: 1/f coupling"},
        {"gamma_ohmic", "tsweep: Ohmic coupling"},
        {"dt", "Pulse interval"},
        {"n", "Half-cycle count N (t = 2 N dt)"},
        {"t", "Readout time"},
        {"n_max", "timeseries: largest N"},
        {"n_list", "isweep: comma-separated N values or 'default'"},
        {"t_min", "tsweep: lowest temperature"},
        {"t_max", "tsweep: highest temperature"},
        {"t_points", "tsweep: number of log-spaced temperatures"},
        {"target", "solve: target suppression in (0, 1)"},
        {"measure", "solve: ratio or coherence-loss"},
        {"bath", "natural or cpb (build the bath from SI parameters)"},
        {"ec_uev", "cpb: charging energy in micro-eV"},
        {"alpha_e2", "cpb: 1/f noise constant alpha/e^2"},
        {"ir_hz", "cpb: IR cutoff in Hz"},
        {"uv_hz", "cpb: UV cutoff in Hz"},
        {"kt_uev", "cpb: k_B T in micro-eV"},
        {"abs_tol", "Quadrature absolute tolerance"},
        {"rel_tol", "Quadrature relative tolerance"},
        {"max_subdivisions", "Quadrature bisection limit"},
        {"osc_resolution", "Mesh points per oscillation period"},
        {"precision", "Significant digits in CSV output"},
    };
    std::map<std::string, std::string> flag_values;
    std::map<std::string, CLI::Option*> flag_options;
    for (const auto& key : known_keys()) {
        if (key == "command" || key == "closed_form") continue;
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        const auto help = flag_help.find(key);
        flag_options[key] =
            app.add_option(flag, flag_values[key], help == flag_help.end() ? std::string() : help->second);
    }
    bool closed_form = false;
    auto* closed_opt = app.add_flag("--closed-form", closed_form, "Also evaluate the analytic approximation");
    std::string preset;
    std::string config_path;
    std::string output_path;
    std::string fine_output_path;
    auto* preset_opt = app.add_option("--preset", preset, "Named parameter set");
    auto* config_opt = app.add_option("--config", config_path, "key=value settings file");
    app.add_option("--out", output_path, "CSV output path (default stdout)");
    app.add_option("--fine-out", fine_output_path, "timeseries: CSV path for the fine free-evolution grid");

    const std::vector<std::pair<Command, std::string>> commands{
        {Command::free, "Free-evolution exponent at time t"},
        {Command::pulsed, "Pulsed exponent after N cycles of interval dt"},
        {Command::timeseries, "Free and pulsed exponents at every t_2N up to n-max"},
        {Command::tsweep, "Coherence against temperature for 1/f and Ohmic baths"},
        {Command::isweep, "Coherence against pulse interval at fixed t"},
        {Command::crossover, "Interval where pulsing stops helping (fixed t)"},
        {Command::solve, "Interval reaching a target suppression"},
    };
    for (const auto& [cmd, help] : commands) app.add_subcommand(to_string(cmd), help)->fallthrough();

    ParseOutcome outcome;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        outcome.message = app.help();
        return outcome;
    } catch (const CLI::ParseError& e) {
        outcome.exit_code = exit_usage;
        outcome.message = std::string(e.what()) + "\n\n" + app.help();
        return outcome;
    }

    try {
        Settings settings;
        if (preset_opt->count() > 0) settings = load_preset(preset);
        if (config_opt->count() > 0) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot read config file " + config_path);
            for (auto& [k, v] : parse_key_value(in, config_path)) settings[k] = v;
        }
        for (const auto& [key, opt] : flag_options)
            if (opt->count() > 0) settings[key] = flag_values[key];
        if (closed_opt->count() > 0) settings["closed_form"] = closed_form ? "true" : "false";
        settings["command"] = app.get_subcommands().front()->get_name();

        RunConfig config = RunConfig::from_settings(settings);
        config.output_path = output_path;
        config.fine_output_path = fine_output_path;
        validate(config);
        outcome.config = std::move(config);
    } catch (const std::exception& e) {
        outcome.exit_code = exit_usage;
        outcome.message = std::string("decohere: ") + e.what() + "\n";
    }
    return outcome;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        return dispatch(config, out, err);
    } catch (const NoSolutionError& e) {
        err << "decohere: " << e.what() << "\n";
        return exit_numerical;
    } catch (const UndefinedRatioError& e) {
        err << "decohere: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        err << "decohere: invalid parameters: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::domain_error& e) {
        err << "decohere: invalid parameters: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::ios_base::failure& e) {
        err << "decohere: I/O error: " << e.what() << "\n";
        return exit_io;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    const auto parsed = parse_args(argc, argv);
    if (!parsed.config) {
        (parsed.exit_code == exit_ok ? out : err) << parsed.message;
        return parsed.exit_code;
    }
    return run(*parsed.config, out, err);
}

}  // namespace decohere::cli
