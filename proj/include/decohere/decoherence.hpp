// decoherence.hpp: free and pulsed dephasing exponents, coherences and the
// suppression ratio.
//
// Free evolution:  G0(t)    = int coth(w/2T) (1 - cos w t) I(w) / w^2 dw
// Pulsed (BB):     GP(N,dt) = 4 int coth(w/2T) (1 - cos w t_2N) I(w) tan^2(w dt/2) / w^2 dw
//
// both over [Lambda_IR, Lambda_UV]; rho_01(t) = e^{-i eps t} e^{-G} rho_01(0).

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>

#include "decohere/bath_model.hpp"
#include "decohere/quadrature.hpp"

namespace decohere {

enum class Method { quadrature, closed_form };

struct DecoherenceValue {
    double gamma{0.0};
    double coherence_magnitude{1.0};  // e^{-gamma}, for |rho_01(0)| = 1
    double time{0.0};
    Method method{Method::quadrature};
    double error_estimate{0.0};
    std::size_t evaluations{0};
    bool converged{true};
};

DecoherenceValue make_value(double gamma, double time, Method method);

DecoherenceValue gamma_free(const BathSpec& bath, double t, const QuadratureConfig& config = {});

DecoherenceValue gamma_pulsed(const BathSpec& bath, const PulseSchedule& sched, const QuadratureConfig& config = {});

// Pulsed exponent with the readout time decoupled from the interval. If t is an
// even multiple of dt this is gamma_pulsed; otherwise no pole (2n+1) pi / dt
// may lie in [IR, UV] (std::domain_error).
DecoherenceValue gamma_pulsed_relaxed(const BathSpec& bath, double interval, double t,
                                      const QuadratureConfig& config = {});

std::complex<double> coherence(const QubitSpec& qubit, const DecoherenceValue& value);

class UndefinedRatioError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// S = GP(N, dt) / G0(t_2N). Throws UndefinedRatioError if G0 < 10 abs_tol.
double suppression_ratio(const BathSpec& bath, const PulseSchedule& sched, const QuadratureConfig& config = {});

}  // namespace decohere
