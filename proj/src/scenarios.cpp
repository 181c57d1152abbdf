#include "decohere/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "decohere/closed_form.hpp"
#include "decohere/decoherence.hpp"
#include "decohere/units.hpp"

namespace decohere {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Runs body(i) for i in [0, n) on a small pool. Results must be written to
// per-index slots so output order never depends on scheduling.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(n, hw);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= n) return;
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

bool closed_form_applies(const SpectralDensity& spec, double interval) {
    return spec.exponent == -1.0 && spec.uv_cutoff * interval < pi;
}

long half_cycles_for(double interval, double t) {
    const double ratio = t / (2.0 * interval);
    const double n = std::round(ratio);
    if (!(n >= 1.0) || std::abs(ratio - n) > 1e-9 * n) {
        std::ostringstream s;
        s << "t = " << t << " is not 2 N dt for integer N (dt = " << interval << ")";
        throw std::invalid_argument(s.str());
    }
    return static_cast<long>(n);
}

}  // namespace

// ---------------------------------------------------------------------------
// ScenarioTable

ScenarioTable::ScenarioTable(std::string name, std::vector<Column> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {}

void ScenarioTable::add_row(std::vector<double> values, std::vector<bool> converged) {
    if (values.size() != columns_.size()) throw std::invalid_argument("ScenarioTable: row width mismatch");
    if (converged.empty()) converged.assign(values.size(), true);
    if (converged.size() != values.size()) throw std::invalid_argument("ScenarioTable: flag width mismatch");
    rows_.push_back(std::move(values));
    converged_.push_back(std::move(converged));
}

bool ScenarioTable::all_converged() const {
    return std::all_of(converged_.begin(), converged_.end(),
                       [](const auto& row) { return std::all_of(row.begin(), row.end(), [](bool b) { return b; }); });
}

std::size_t ScenarioTable::column_index(std::string_view label) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i].label == label) return i;
    throw std::out_of_range("ScenarioTable: no column '" + std::string(label) + "'");
}

std::vector<double> ScenarioTable::column(std::string_view label) const {
    const auto c = column_index(label);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r[c]);
    return out;
}

double ScenarioTable::at(std::size_t row, std::string_view label) const { return rows_.at(row)[column_index(label)]; }

// ---------------------------------------------------------------------------
// Sweeps

TimeSeries time_series(const BathSpec& bath, double interval, long n_max, const QuadratureConfig& config,
                       int fine_steps) {
    bath.validate();
    config.validate();
    if (!(interval > 0.0)) throw std::invalid_argument("time_series: interval must be positive");
    if (n_max < 0) throw std::invalid_argument("time_series: n_max must be nonnegative");
    if (fine_steps < 1) throw std::invalid_argument("time_series: fine_steps must be positive");

    const bool with_closed = bath.temperature == 0.0 && closed_form_applies(bath.density, interval);
    std::vector<Column> cols{{"N", ""}, {"t", "time"}, {"gamma_free", ""}, {"gamma_pulsed", ""}};
    if (with_closed) cols.push_back({"gamma_closed", ""});
    cols.push_back({"coherence_free", ""});
    cols.push_back({"coherence_pulsed", ""});

    const auto rows = static_cast<std::size_t>(n_max) + 1;
    std::vector<DecoherenceValue> free(rows), pulsed(rows);
    parallel_for(rows, [&](std::size_t i) {
        if (i == 0) {
            free[i] = make_value(0.0, 0.0, Method::quadrature);
            pulsed[i] = make_value(0.0, 0.0, Method::quadrature);
            return;
        }
        const PulseSchedule sched(interval, static_cast<long>(i));
        free[i] = gamma_free(bath, sched.total_time(), config);
        pulsed[i] = gamma_pulsed(bath, sched, config);
    });

    ScenarioTable table("time_series", cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const double t = 2.0 * static_cast<double>(i) * interval;
        std::vector<double> v{static_cast<double>(i), t, free[i].gamma, pulsed[i].gamma};
        std::vector<bool> ok{true, true, free[i].converged, pulsed[i].converged};
        if (with_closed) {
            v.push_back(i == 0 ? 0.0 : gamma_pulsed_t0_closed(bath.density, interval, t));
            ok.push_back(true);
        }
        v.push_back(free[i].coherence_magnitude);
        v.push_back(pulsed[i].coherence_magnitude);
        ok.push_back(free[i].converged);
        ok.push_back(pulsed[i].converged);
        table.add_row(std::move(v), std::move(ok));
    }

    const auto fine_rows = 2 * static_cast<std::size_t>(n_max) * static_cast<std::size_t>(fine_steps) + 1;
    const double step = interval / static_cast<double>(fine_steps);
    std::vector<DecoherenceValue> fine(fine_rows);
    parallel_for(fine_rows, [&](std::size_t k) { fine[k] = gamma_free(bath, step * static_cast<double>(k), config); });
    ScenarioTable fine_table("free_fine", {{"t", "time"}, {"gamma_free", ""}, {"coherence_free", ""}});
    for (std::size_t k = 0; k < fine_rows; ++k) {
        fine_table.add_row({step * static_cast<double>(k), fine[k].gamma, fine[k].coherence_magnitude},
                           {true, fine[k].converged, fine[k].converged});
    }
    return {std::move(table), std::move(fine_table)};
}

std::vector<double> default_temperature_grid() {
    constexpr int points = 30;
    std::vector<double> grid(points);
    const double lo = std::log10(0.1);
    const double hi = std::log10(1000.0);
    for (int i = 0; i < points; ++i) grid[i] = std::pow(10.0, lo + (hi - lo) * i / (points - 1));
    return grid;
}

ScenarioTable temperature_sweep(const SpectralDensity& one_over_f, const SpectralDensity& ohmic, double interval,
                                double t, const std::vector<double>& temperatures, const QuadratureConfig& config) {
    one_over_f.validate();
    ohmic.validate();
    config.validate();
    if (!(interval > 0.0)) throw std::invalid_argument("temperature_sweep: interval must be positive");
    const PulseSchedule sched(interval, half_cycles_for(interval, t));
    for (double temp : temperatures)
        if (!(temp >= 0.0)) throw std::invalid_argument("temperature_sweep: temperatures must be nonnegative");

    const std::size_t n = temperatures.size();
    // Four evaluations per temperature: 1/f free, 1/f pulsed, Ohmic free, Ohmic pulsed.
    std::vector<DecoherenceValue> cells(4 * n);
    parallel_for(4 * n, [&](std::size_t k) {
        const std::size_t row = k / 4;
        const std::size_t which = k % 4;
        const BathSpec bath{which < 2 ? one_over_f : ohmic, temperatures[row]};
        cells[k] = which % 2 == 0 ? gamma_free(bath, sched.total_time(), config) : gamma_pulsed(bath, sched, config);
    });

    ScenarioTable table("temperature_sweep", {{"T", "frequency"},
                                              {"gamma_1f_free", ""},
                                              {"gamma_1f_pulsed", ""},
                                              {"gamma_ohmic_free", ""},
                                              {"gamma_ohmic_pulsed", ""},
                                              {"coherence_1f_free", ""},
                                              {"coherence_1f_pulsed", ""},
                                              {"coherence_ohmic_free", ""},
                                              {"coherence_ohmic_pulsed", ""},
                                              {"ratio_1f", ""},
                                              {"ratio_ohmic", ""}});
    for (std::size_t row = 0; row < n; ++row) {
        const auto* c = &cells[4 * row];
        std::vector<double> v{temperatures[row]};
        std::vector<bool> ok{true};
        for (int j = 0; j < 4; ++j) {
            v.push_back(c[j].gamma);
            ok.push_back(c[j].converged);
        }
        for (int j = 0; j < 4; ++j) {
            v.push_back(c[j].coherence_magnitude);
            ok.push_back(c[j].converged);
        }
        v.push_back(c[1].gamma / c[0].gamma);
        v.push_back(c[3].gamma / c[2].gamma);
        ok.push_back(c[0].converged && c[1].converged);
        ok.push_back(c[2].converged && c[3].converged);
        table.add_row(std::move(v), std::move(ok));
    }
    return table;
}

std::vector<long> default_interval_counts() {
    return {8, 10, 12, 14, 16, 20, 24, 28, 32, 36, 40, 48, 56, 64, 80, 100, 128, 160, 200, 256, 320, 400, 512, 640, 800, 1000};
}

ScenarioTable interval_sweep(const SpectralDensity& spec, double temperature, double t,
                             const std::vector<long>& half_cycle_counts, const QuadratureConfig& config) {
    const BathSpec bath{spec, temperature};
    bath.validate();
    config.validate();
    if (!(t > 0.0)) throw std::invalid_argument("interval_sweep: t must be positive");
    for (long n : half_cycle_counts)
        if (n < 1) throw std::invalid_argument("interval_sweep: half-cycle counts must be positive");

    const auto free = gamma_free(bath, t, config);
    const std::size_t n = half_cycle_counts.size();
    std::vector<DecoherenceValue> pulsed(n);
    parallel_for(n, [&](std::size_t i) {
        const long cycles = half_cycle_counts[i];
        pulsed[i] = gamma_pulsed(bath, PulseSchedule(t / (2.0 * static_cast<double>(cycles)), cycles), config);
    });

    const bool with_closed = spec.exponent == -1.0;
    std::vector<Column> cols{{"N", ""},          {"dt", "time"},          {"uv_dt", ""},
                             {"gamma_free", ""}, {"gamma_pulsed", ""},    {"coherence_free", ""},
                             {"coherence_pulsed", ""}};
    if (with_closed) {
        cols.push_back({"gamma_closed", ""});
        cols.push_back({"closed_regime", "0=valid 1=marginal 2=invalid"});
    }
    ScenarioTable table("interval_sweep", cols);
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = t / (2.0 * static_cast<double>(half_cycle_counts[i]));
        std::vector<double> v{static_cast<double>(half_cycle_counts[i]), dt, spec.uv_cutoff * dt, free.gamma,
                              pulsed[i].gamma, free.coherence_magnitude, pulsed[i].coherence_magnitude};
        std::vector<bool> ok{true, true, true, free.converged, pulsed[i].converged, free.converged, pulsed[i].converged};
        if (with_closed) {
            const auto validity = check_validity(spec, dt, temperature);
            double closed = nan;
            if (closed_form_applies(spec, dt)) {
                closed = gamma_pulsed_t0_closed(spec, dt, t);
                if (temperature > 0.0) closed += gamma_pulsed_thermal_closed(spec.coupling, dt, temperature, t);
            }
            v.push_back(closed);
            v.push_back(static_cast<double>(static_cast<int>(validity.regime)));
            ok.push_back(true);
            ok.push_back(true);
        }
        table.add_row(std::move(v), std::move(ok));
    }
    return table;
}

// ---------------------------------------------------------------------------
// Crossover and interval solve

CrossoverResult crossover_interval(const SpectralDensity& spec, double temperature, double t,
                                   const QuadratureConfig& config) {
    const BathSpec bath{spec, temperature};
    bath.validate();
    CrossoverResult out;
    if (!(t > 0.0)) {
        out.reason = "t <= 0: both exponents vanish";
        return out;
    }
    const double free = gamma_free(bath, t, config).gamma;
    if (free <= 10.0 * config.abs_tol) {
        out.reason = "free exponent vanishes at this t";
        return out;
    }

    constexpr std::size_t scan_points = 256;
    const double upper = (1.0 - 1e-3) * pi / spec.uv_cutoff;
    auto excess = [&](double dt) { return gamma_pulsed_relaxed(bath, dt, t, config).gamma - free; };

    std::vector<double> grid(scan_points), values(scan_points);
    for (std::size_t k = 0; k < scan_points; ++k) grid[k] = upper * static_cast<double>(k + 1) / scan_points;
    parallel_for(scan_points, [&](std::size_t k) { values[k] = excess(grid[k]); });

    std::optional<std::size_t> first;
    for (std::size_t k = 1; k < scan_points; ++k) {
        if ((values[k - 1] < 0.0) != (values[k] < 0.0)) {
            ++out.sign_changes;
            if (!first) first = k;
        }
    }
    if (!first) {
        std::ostringstream s;
        s << "no sign change of GP - G0 on (0, " << upper << "]; pulses "
          << (values.back() < 0.0 ? "suppress" : "enhance") << " decoherence throughout";
        out.reason = s.str();
        return out;
    }

    double lo = grid[*first - 1];
    double hi = grid[*first];
    const bool lo_negative = values[*first - 1] < 0.0;
    while (hi - lo > 1e-4 * hi) {
        const double mid = 0.5 * (lo + hi);
        if ((excess(mid) < 0.0) == lo_negative)
            lo = mid;
        else
            hi = mid;
    }
    out.interval = 0.5 * (lo + hi);
    out.reason = out.sign_changes > 1 ? "several sign changes; smallest crossover returned" : "crossover found";
    return out;
}

std::string to_string(SuppressionMeasure m) {
    return m == SuppressionMeasure::ratio ? "ratio" : "coherence-loss";
}

SuppressionMeasure parse_suppression_measure(std::string_view text) {
    if (text == "ratio") return SuppressionMeasure::ratio;
    if (text == "coherence-loss" || text == "coherence_loss") return SuppressionMeasure::coherence_loss;
    throw std::invalid_argument("unknown suppression measure '" + std::string(text) + "'");
}

double suppression_measure(const BathSpec& bath, const PulseSchedule& sched, SuppressionMeasure measure,
                           const QuadratureConfig& config) {
    if (measure == SuppressionMeasure::ratio) return suppression_ratio(bath, sched, config);
    return -std::expm1(-gamma_pulsed(bath, sched, config).gamma);
}

SolveResult solve_interval_for_suppression(const BathSpec& bath, long half_cycles, double target,
                                           const QuadratureConfig& config, SuppressionMeasure measure) {
    bath.validate();
    if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("solve: target must lie in (0, 1)");
    if (half_cycles < 1) throw std::invalid_argument("solve: half-cycle count must be positive");

    auto value_at = [&](double dt) { return suppression_measure(bath, PulseSchedule(dt, half_cycles), measure, config); };

    constexpr int points_per_segment = 96;
    constexpr int max_doublings = 12;
    const double start_high = pi / bath.density.uv_cutoff;
    const double low = start_high * 1e-3;

    // Geometric scan over [a, b]; returns sample points and values.
    auto scan = [&](double a, double b, int points) {
        std::vector<double> xs(points), ys(points);
        for (int k = 0; k < points; ++k) xs[k] = a * std::pow(b / a, static_cast<double>(k) / (points - 1));
        parallel_for(static_cast<std::size_t>(points), [&](std::size_t k) { ys[k] = value_at(xs[k]); });
        return std::pair{xs, ys};
    };

    auto [xs, ys] = scan(low, start_high, points_per_segment);
    if (ys.front() >= target) {
        throw NoSolutionError("solve: target already exceeded at the smallest interval", xs.front(), xs.back(),
                              ys.front(), ys.back());
    }
    double high = start_high;
    for (int d = 0; d < max_doublings && ys.back() < target; ++d) {
        const double next = 2.0 * high;
        auto [nx, ny] = scan(high, next, 16);
        xs.insert(xs.end(), nx.begin() + 1, nx.end());
        ys.insert(ys.end(), ny.begin() + 1, ny.end());
        high = next;
    }

    std::optional<std::size_t> first;
    std::size_t crossings = 0;
    for (std::size_t k = 1; k < xs.size(); ++k) {
        if ((ys[k - 1] < target) != (ys[k] < target)) {
            ++crossings;
            if (!first) first = k;
        }
    }
    if (!first) {
        std::ostringstream s;
        s << "solve: no interval reaches " << to_string(measure) << " = " << target << " on [" << xs.front() << ", "
          << xs.back() << "]; values " << ys.front() << " .. " << ys.back();
        throw NoSolutionError(s.str(), xs.front(), xs.back(), ys.front(), ys.back());
    }

    double lo = xs[*first - 1];
    double hi = xs[*first];
    const double bracket_low = lo;
    const double bracket_high = hi;
    while (hi - lo > 1e-8 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (value_at(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    SolveResult out;
    out.interval = 0.5 * (lo + hi);
    out.achieved = value_at(out.interval);
    out.multiple_roots = crossings > 1;
    out.bracket_low = bracket_low;
    out.bracket_high = bracket_high;
    return out;
}

// ---------------------------------------------------------------------------
// Cooper-pair box

void CooperPairBoxParams::validate() const {
    if (!(charging_energy_uev > 0.0 && noise_constant_e2 > 0.0 && ir_hz > 0.0 && uv_hz > ir_hz &&
          temperature_uev > 0.0 && half_cycles >= 1))
        throw std::invalid_argument("Cooper-pair box parameters must be positive with uv > ir");
}

BathSpec cooper_pair_box_bath(const CooperPairBoxParams& p) {
    p.validate();
    const double charging = units::micro_ev_to_angular(p.charging_energy_uev);
    BathSpec bath;
    bath.density.exponent = -1.0;
    bath.density.coupling = 2.0 * charging * charging * p.noise_constant_e2;
    bath.density.ir_cutoff = units::hz_to_angular(p.ir_hz);
    bath.density.uv_cutoff = units::hz_to_angular(p.uv_hz);
    bath.temperature = units::micro_ev_to_angular(p.temperature_uev);
    bath.validate();
    return bath;
}

}  // namespace decohere
