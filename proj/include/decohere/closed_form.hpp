// closed_form.hpp: analytic approximations to the pulsed 1/f exponent.
//
// Replacing tan^2 x by x^2 / (1 - 2x/pi) turns the zero-temperature integral
// for I(w) = gamma / w into elementary pieces:
//
//   G0 = gamma dt^2 [ ln(uv/ir) - ln((pi - uv dt)/(pi - ir dt))
//                     - Ci(uv t) + Ci(ir t) ]                   (+ O(dt) dropped)
//
// The low-temperature correction is taken in the cutoff-free limit:
//
//   GT = (gamma dt^2 / 2) [ ln(1 + T^2 t^2) + (2 dt T / pi)(1 - 1/(1 + T^2 t^2)) ]
//
// The IR scale inside the logarithm and the Ci argument is identified with
// the IR cutoff of the bath.

#pragma once

#include <string>
#include <vector>

#include "decohere/bath_model.hpp"

namespace decohere {

enum class Regime { valid, marginal, invalid };

struct ApproximationValidity {
    Regime regime{Regime::valid};
    std::vector<std::string> reasons;
};

std::string to_string(Regime r);

// Zero-temperature part at readout time t (normally t_2N). Requires exponent -1
// and uv * dt < pi; throws std::domain_error otherwise.
double gamma_pulsed_t0_closed(const SpectralDensity& spec, double interval, double t);
double gamma_pulsed_t0_closed(const SpectralDensity& spec, const PulseSchedule& sched);

// The t -> infinity value, where both Ci terms have decayed.
double gamma_pulsed_t0_plateau(const SpectralDensity& spec, double interval);

// Low-temperature correction. Throws std::domain_error for T <= 0.
double gamma_pulsed_thermal_closed(double coupling, double interval, double temperature, double t);

// valid: uv dt < pi/2 and, for T > 0, coth(x) ~ 1 + 2 e^{-2x} holds over the band (ir / 2T > 1).
// marginal: pi/2 <= uv dt < pi, or the thermal expansion condition fails.
// invalid: uv dt >= pi, or the density is not 1/f.
ApproximationValidity check_validity(const SpectralDensity& spec, double interval, double temperature);

}  // namespace decohere
