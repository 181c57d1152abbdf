// units.hpp: SI constants (CODATA 2018, exact where the SI fixes them) and
// conversions into the natural units of the core (hbar = k_B = 1, angular
// frequencies in rad/s, times in s).

#pragma once

namespace decohere::units {

inline constexpr double hbar = 1.054571817e-34;             // J s
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double boltzmann = 1.380649e-23;           // J / K
inline constexpr double electron_volt = 1.602176634e-19;    // J
inline constexpr double micro_ev = 1e-6 * electron_volt;    // J

// Energy E [J] -> E / hbar [rad/s].
double energy_to_angular(double joules);
double micro_ev_to_angular(double micro_ev);

// Ordinary frequency f [Hz] -> 2 pi f [rad/s].
double hz_to_angular(double hz);

// k_B T / hbar [rad/s].
double kelvin_to_angular(double kelvin);

inline constexpr double seconds_per_ns = 1e-9;

}  // namespace decohere::units
