#include "decohere/bath_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace decohere {

void SpectralDensity::validate() const {
    if (!(coupling > 0.0) || !std::isfinite(coupling))
        throw std::invalid_argument("spectral density: coupling must be positive, got " + std::to_string(coupling));
    if (!(ir_cutoff > 0.0))
        throw std::invalid_argument("spectral density: IR cutoff must be positive");
    if (!(uv_cutoff > ir_cutoff) || !std::isfinite(uv_cutoff))
        throw std::invalid_argument("spectral density: UV cutoff must exceed the IR cutoff");
    if (!std::isfinite(exponent))
        throw std::invalid_argument("spectral density: exponent must be finite");
}

SpectralDensity SpectralDensity::one_over_f(double coupling, double ir, double uv) {
    SpectralDensity s{-1.0, coupling, ir, uv};
    s.validate();
    return s;
}

SpectralDensity SpectralDensity::ohmic(double coupling, double ir, double uv) {
    SpectralDensity s{1.0, coupling, ir, uv};
    s.validate();
    return s;
}

void BathSpec::validate() const {
    density.validate();
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw std::invalid_argument("bath: temperature must be finite and nonnegative");
}

std::optional<double> BathSpec::thermal_time() const {
    if (temperature > 0.0) return 1.0 / temperature;
    return std::nullopt;
}

PulseSchedule::PulseSchedule(double interval, long half_cycles)
    : interval_(interval), half_cycles_(half_cycles) {
    if (!(interval > 0.0) || !std::isfinite(interval))
        throw std::invalid_argument("pulse schedule: interval must be positive");
    if (half_cycles < 1)
        throw std::invalid_argument("pulse schedule: half-cycle count must be at least 1");
}

double density_at(const SpectralDensity& spec, double omega) {
    if (!(omega > 0.0)) throw std::domain_error("density_at: frequency must be positive");
    if (omega < spec.ir_cutoff || omega > spec.uv_cutoff) return 0.0;
    if (spec.exponent == 1.0) return spec.coupling * omega;
    if (spec.exponent == -1.0) return spec.coupling / omega;
    return spec.coupling * std::pow(omega, spec.exponent);
}

double thermal_factor(double temperature, double omega) {
    if (!(omega > 0.0)) throw std::domain_error("thermal_factor: frequency must be positive");
    if (!(temperature >= 0.0)) throw std::domain_error("thermal_factor: temperature must be nonnegative");
    if (temperature == 0.0) return 1.0;
    // coth(x) = 1 + 2 / (e^{2x} - 1); stable at both ends.
    const double x = omega / (2.0 * temperature);
    return 1.0 + 2.0 / std::expm1(2.0 * x);
}

PoleOffset nearest_pole(double phase) noexcept {
    constexpr double pi = std::numbers::pi;
    const double n = std::round((phase / pi - 1.0) / 2.0);
    const double nn = n < 0.0 ? 0.0 : n;
    return {static_cast<long>(nn), phase - (2.0 * nn + 1.0) * pi};
}

std::optional<double> filter_factor(double interval, double omega) {
    if (!(omega > 0.0)) throw std::domain_error("filter_factor: frequency must be positive");
    if (!(interval > 0.0)) throw std::domain_error("filter_factor: interval must be positive");
    const double phase = omega * interval;
    const auto pole = nearest_pole(phase);
    if (std::abs(pole.offset) <= 8.0 * std::numeric_limits<double>::epsilon() * phase) return std::nullopt;
    const double t = std::tan(0.5 * phase);
    return t * t;
}

}  // namespace decohere
