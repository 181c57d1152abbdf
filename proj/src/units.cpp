#include "decohere/units.hpp"

#include <numbers>

namespace decohere::units {

double energy_to_angular(double joules) { return joules / hbar; }

double micro_ev_to_angular(double micro_ev_value) { return energy_to_angular(micro_ev_value * micro_ev); }

double hz_to_angular(double hz) { return 2.0 * std::numbers::pi * hz; }

double kelvin_to_angular(double kelvin) { return energy_to_angular(boltzmann * kelvin); }

}  // namespace decohere::units
