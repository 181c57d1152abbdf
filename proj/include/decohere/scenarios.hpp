// scenarios.hpp: parameter sweeps producing tables, crossover and
// target-suppression interval solvers, and the Cooper-pair-box bath.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "decohere/bath_model.hpp"
#include "decohere/quadrature.hpp"

namespace decohere {

struct Column {
    std::string label;
    std::string unit;  // empty for dimensionless
};

// Rectangular numeric table. Every cell carries a convergence flag.
class ScenarioTable {
public:
    ScenarioTable(std::string name, std::vector<Column> columns);

    // `converged` may be empty (all cells converged) or match the row width.
    void add_row(std::vector<double> values, std::vector<bool> converged = {});

    const std::string& name() const noexcept { return name_; }
    const std::vector<Column>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
    const std::vector<std::vector<bool>>& converged() const noexcept { return converged_; }

    std::size_t row_count() const noexcept { return rows_.size(); }
    std::size_t column_count() const noexcept { return columns_.size(); }
    bool all_converged() const;

    // Throws std::out_of_range for an unknown label.
    std::size_t column_index(std::string_view label) const;
    std::vector<double> column(std::string_view label) const;
    double at(std::size_t row, std::string_view label) const;

private:
    std::string name_;
    std::vector<Column> columns_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::vector<bool>> converged_;
};

struct TimeSeries {
    ScenarioTable pulses;     // one row per readout time t_2N, N = 0..n_max
    ScenarioTable free_fine;  // G0 on a grid of dt / fine_steps
};

// Free and pulsed exponents at t_2N = 2 N dt for N = 0..n_max. A closed-form
// column is added for 1/f baths at T = 0 with uv * dt < pi.
TimeSeries time_series(const BathSpec& bath, double interval, long n_max, const QuadratureConfig& config = {},
                       int fine_steps = 4);

// 30 points, logarithmic over [0.1, 1000].
std::vector<double> default_temperature_grid();

// Coherence at time t for four cases (1/f and Ohmic, free and pulsed) per
// temperature. t must be 2 N dt for integer N (std::invalid_argument).
ScenarioTable temperature_sweep(const SpectralDensity& one_over_f, const SpectralDensity& ohmic, double interval,
                                double t, const std::vector<double>& temperatures,
                                const QuadratureConfig& config = {});

std::vector<long> default_interval_counts();

// Pulsed against free coherence at fixed t over dt = t / (2N).
ScenarioTable interval_sweep(const SpectralDensity& spec, double temperature, double t,
                             const std::vector<long>& half_cycle_counts, const QuadratureConfig& config = {});

struct CrossoverResult {
    std::optional<double> interval;
    std::string reason;
    std::size_t sign_changes{0};
    // The readout time is held at t while dt varies continuously, so most
    // scan points are not whole cycles.
    bool relaxed{true};
};

// Root of GP(dt; t) - G0(t) on (0, (1 - 1e-3) pi / uv), bisected to relative
// width 1e-4. Absence of a sign change is a result, not an error.
CrossoverResult crossover_interval(const SpectralDensity& spec, double temperature, double t,
                                   const QuadratureConfig& config = {});

enum class SuppressionMeasure {
    ratio,           // GP / G0 at t_2N
    coherence_loss,  // 1 - e^{-GP}: fraction of coherence lost under pulses
};

std::string to_string(SuppressionMeasure m);
SuppressionMeasure parse_suppression_measure(std::string_view text);

double suppression_measure(const BathSpec& bath, const PulseSchedule& sched, SuppressionMeasure measure,
                           const QuadratureConfig& config = {});

struct SolveResult {
    double interval{0.0};
    double achieved{0.0};
    bool multiple_roots{false};
    double bracket_low{0.0};
    double bracket_high{0.0};
};

class NoSolutionError : public std::runtime_error {
public:
    NoSolutionError(const std::string& what, double low, double high, double at_low, double at_high)
        : std::runtime_error(what), low_(low), high_(high), at_low_(at_low), at_high_(at_high) {}
    double low() const noexcept { return low_; }
    double high() const noexcept { return high_; }
    double value_at_low() const noexcept { return at_low_; }
    double value_at_high() const noexcept { return at_high_; }

private:
    double low_, high_, at_low_, at_high_;
};

// Smallest dt with measure(dt) = target, t_2N = 2 N dt moving with dt. The
// search starts on (0, pi/uv] and doubles the upper end while the target is
// not reached, at most to 4096 pi/uv.
SolveResult solve_interval_for_suppression(const BathSpec& bath, long half_cycles, double target,
                                           const QuadratureConfig& config = {},
                                           SuppressionMeasure measure = SuppressionMeasure::coherence_loss);

struct CooperPairBoxParams {
    double charging_energy_uev{122.0};
    double noise_constant_e2{1.3e-3 * 1.3e-3};  // alpha / e^2
    double ir_hz{100.0};
    double uv_hz{10e9};
    double temperature_uev{5.0};  // k_B T
    long half_cycles{1};

    void validate() const;
};

// 1/f bath in natural units (rad/s) with gamma = 2 E_C^2 (alpha/e^2) / hbar^2.
BathSpec cooper_pair_box_bath(const CooperPairBoxParams& p);

}  // namespace decohere
