// bath_model.hpp: bath, pulse schedule and qubit descriptions plus the
// pointwise spectral, thermal and filter factors entering the dephasing
// integrals.
//
// Units: hbar = k_B = 1 throughout. Frequencies are angular, temperatures are
// expressed as angular frequencies and times are inverse angular frequencies.
// The coupling of a power-law density gamma * w^nu carries units w^(1 - nu) so
// that the decoherence exponents come out dimensionless.

#pragma once

#include <complex>
#include <optional>

namespace decohere {

// Power-law spectral density I(w) = coupling * w^exponent with sudden cutoffs.
struct SpectralDensity {
    double exponent{-1.0};   // nu: -1 for 1/f, +1 for Ohmic
    double coupling{0.25};   // gamma, units w^(1 - nu)
    double ir_cutoff{1.0};   // Lambda_IR > 0
    double uv_cutoff{80.0};  // Lambda_UV > Lambda_IR

    // Throws std::invalid_argument unless 0 < ir < uv and coupling > 0.
    void validate() const;

    static SpectralDensity one_over_f(double coupling, double ir, double uv);
    static SpectralDensity ohmic(double coupling, double ir, double uv);
};

struct BathSpec {
    SpectralDensity density;
    double temperature{0.0};  // T >= 0; exactly zero means the coth factor is 1

    void validate() const;

    // t_beta = 1/T, only defined for T > 0.
    std::optional<double> thermal_time() const;
};

// Periodic ideal (zero-width) pi pulses every `interval`; the coherence is
// read out after `half_cycles` full cycles, at t_2N = 2 N dt.
class PulseSchedule {
public:
    PulseSchedule(double interval, long half_cycles);

    double interval() const noexcept { return interval_; }
    long half_cycles() const noexcept { return half_cycles_; }
    double total_time() const noexcept { return 2.0 * static_cast<double>(half_cycles_) * interval_; }

private:
    double interval_;
    long half_cycles_;
};

struct QubitSpec {
    double level_splitting{0.0};                      // epsilon; only enters the phase
    std::complex<double> initial_coherence{1.0, 0.0};  // rho_01(0)
};

// gamma * w^nu inside [ir, uv], zero outside. Throws std::domain_error for w <= 0.
double density_at(const SpectralDensity& spec, double omega);

// coth(w / 2T), exactly 1 at T = 0. Throws std::domain_error for w <= 0 or T < 0.
double thermal_factor(double temperature, double omega);

// tan^2(w dt / 2). Returns std::nullopt when w dt sits on an odd multiple of pi
// to within machine resolution; the full pulsed integrand handles those points.
std::optional<double> filter_factor(double interval, double omega);

// Index n of the odd multiple (2n+1) pi closest to x, and the signed offset
// x - (2n+1) pi.
struct PoleOffset {
    long index;
    double offset;
};
PoleOffset nearest_pole(double phase) noexcept;

}  // namespace decohere
