#include "decohere/decoherence.hpp"

#include <algorithm>
#include <cmath>

namespace decohere {

namespace {

DecoherenceValue from_integral(const IntegralResult& r, double time) {
    DecoherenceValue v = make_value(std::max(r.value, 0.0), time, Method::quadrature);
    v.error_estimate = r.error_estimate;
    v.evaluations = r.evaluations;
    v.converged = r.converged;
    return v;
}

// True when t / dt is an even integer up to rounding, returning N = t / (2 dt).
bool commensurate(double interval, double t, long& half_cycles) {
    const double ratio = t / (2.0 * interval);
    const double n = std::round(ratio);
    if (n >= 1.0 && std::abs(ratio - n) <= 1e-12 * n) {
        half_cycles = static_cast<long>(n);
        return true;
    }
    return false;
}

}  // namespace

DecoherenceValue make_value(double gamma, double time, Method method) {
    DecoherenceValue v;
    v.gamma = gamma;
    v.coherence_magnitude = std::exp(-gamma);
    v.time = time;
    v.method = method;
    return v;
}

DecoherenceValue gamma_free(const BathSpec& bath, double t, const QuadratureConfig& config) {
    bath.validate();
    if (!(t >= 0.0)) throw std::invalid_argument("gamma_free: time must be nonnegative");
    if (t == 0.0) return make_value(0.0, 0.0, Method::quadrature);
    const auto& d = bath.density;
    const auto mesh = oscillation_mesh(t, d.ir_cutoff, d.uv_cutoff, config.oscillation_resolution);
    const auto r = integrate([&](double w) { return free_integrand(w, bath, t); }, mesh, config);
    return from_integral(r, t);
}

DecoherenceValue gamma_pulsed(const BathSpec& bath, const PulseSchedule& sched, const QuadratureConfig& config) {
    bath.validate();
    const auto& d = bath.density;
    const double t = sched.total_time();
    const auto mesh = breakpoints(sched.interval(), t, d.ir_cutoff, d.uv_cutoff, config.oscillation_resolution);
    const auto r = integrate([&](double w) { return regularized_pulsed_integrand(w, bath, sched); }, mesh, config);
    return from_integral(r, t);
}

DecoherenceValue gamma_pulsed_relaxed(const BathSpec& bath, double interval, double t,
                                      const QuadratureConfig& config) {
    bath.validate();
    if (!(interval > 0.0)) throw std::invalid_argument("gamma_pulsed_relaxed: interval must be positive");
    if (!(t >= 0.0)) throw std::invalid_argument("gamma_pulsed_relaxed: time must be nonnegative");
    if (t == 0.0) return make_value(0.0, 0.0, Method::quadrature);
    long n = 0;
    if (commensurate(interval, t, n)) return gamma_pulsed(bath, PulseSchedule(interval, n), config);

    const auto& d = bath.density;
    const bool pole_in_band = !singular_points(interval, d.ir_cutoff, d.uv_cutoff).empty() ||
                              !filter_factor(interval, d.ir_cutoff) || !filter_factor(interval, d.uv_cutoff);
    if (pole_in_band)
        throw std::domain_error("gamma_pulsed_relaxed: tan^2 pole inside the band is not integrable "
                                "unless t is an even multiple of dt");
    const auto mesh = oscillation_mesh(t, d.ir_cutoff, d.uv_cutoff, config.oscillation_resolution);
    const auto r = integrate([&](double w) { return relaxed_pulsed_integrand(w, bath, interval, t); }, mesh, config);
    return from_integral(r, t);
}

std::complex<double> coherence(const QubitSpec& qubit, const DecoherenceValue& value) {
    const std::complex<double> phase = std::polar(1.0, -qubit.level_splitting * value.time);
    return phase * std::exp(-value.gamma) * qubit.initial_coherence;
}

double suppression_ratio(const BathSpec& bath, const PulseSchedule& sched, const QuadratureConfig& config) {
    const auto free = gamma_free(bath, sched.total_time(), config);
    if (free.gamma < 10.0 * config.abs_tol)
        throw UndefinedRatioError("suppression_ratio: free exponent below 10 abs_tol, ratio undefined");
    const auto pulsed = gamma_pulsed(bath, sched, config);
    return pulsed.gamma / free.gamma;
}

}  // namespace decohere
