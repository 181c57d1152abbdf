#include "decohere/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "decohere/special_functions.hpp"

namespace decohere {

namespace {

constexpr double pi = std::numbers::pi;

void require_one_over_f(const SpectralDensity& spec) {
    spec.validate();
    if (spec.exponent != -1.0) throw std::domain_error("closed form: only derived for a 1/f density");
}

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::valid: return "valid";
        case Regime::marginal: return "marginal";
        case Regime::invalid: return "invalid";
    }
    return "unknown";
}

double gamma_pulsed_t0_plateau(const SpectralDensity& spec, double interval) {
    require_one_over_f(spec);
    if (!(interval > 0.0)) throw std::domain_error("closed form: interval must be positive");
    const double uv_phase = spec.uv_cutoff * interval;
    if (!(uv_phase < pi)) throw std::domain_error("closed form: diverges for uv * dt >= pi");
    const double ir_phase = spec.ir_cutoff * interval;
    return spec.coupling * interval * interval *
           (std::log(spec.uv_cutoff / spec.ir_cutoff) - std::log((pi - uv_phase) / (pi - ir_phase)));
}

double gamma_pulsed_t0_closed(const SpectralDensity& spec, double interval, double t) {
    const double plateau = gamma_pulsed_t0_plateau(spec, interval);
    if (t < 0.0) throw std::domain_error("closed form: negative time");
    if (t == 0.0) return 0.0;
    const double damped = cosine_integral(spec.ir_cutoff * t) - cosine_integral(spec.uv_cutoff * t);
    return plateau + spec.coupling * interval * interval * damped;
}

double gamma_pulsed_t0_closed(const SpectralDensity& spec, const PulseSchedule& sched) {
    return gamma_pulsed_t0_closed(spec, sched.interval(), sched.total_time());
}

double gamma_pulsed_thermal_closed(double coupling, double interval, double temperature, double t) {
    if (!(temperature > 0.0)) throw std::domain_error("thermal closed form: temperature must be positive");
    if (!(interval > 0.0)) throw std::domain_error("thermal closed form: interval must be positive");
    if (t < 0.0) throw std::domain_error("thermal closed form: negative time");
    const double tt = temperature * t;
    const double q = 1.0 + tt * tt;
    return 0.5 * coupling * interval * interval *
           (std::log1p(tt * tt) + (2.0 * interval * temperature / pi) * (1.0 - 1.0 / q));
}

ApproximationValidity check_validity(const SpectralDensity& spec, double interval, double temperature) {
    ApproximationValidity out;
    auto demote = [&](Regime r, std::string why) {
        if (static_cast<int>(r) > static_cast<int>(out.regime)) out.regime = r;
        out.reasons.push_back(std::move(why));
    };
    if (spec.exponent != -1.0) demote(Regime::invalid, "closed form exists only for a 1/f density");

    const double uv_phase = spec.uv_cutoff * interval;
    std::ostringstream s;
    s << "uv*dt = " << uv_phase;
    if (!(uv_phase < pi / 2.0)) {
        if (uv_phase < pi)
            demote(Regime::marginal, s.str() + " outside [0, pi/2) where tan^2 x ~ x^2/(1-2x/pi) was taken");
        else
            demote(Regime::invalid, s.str() + " >= pi, the logarithm diverges");
    }
    if (temperature > 0.0) {
        const double x = spec.ir_cutoff / (2.0 * temperature);
        if (!(x > 1.0)) {
            std::ostringstream r;
            r << "coth expansion needs ir/(2T) > 1, got " << x;
            demote(Regime::marginal, r.str());
        }
    }
    return out;
}

}  // namespace decohere
