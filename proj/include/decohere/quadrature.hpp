// quadrature.hpp: integrands of the dephasing exponents and the adaptive
// panel integrator that evaluates them over [Lambda_IR, Lambda_UV].
//
// The pulsed integrand carries tan^2(w dt / 2), which diverges at
// w dt = (2n+1) pi. At t_2N = 2 N dt the factor 1 - cos(w t_2N) = 2 sin^2(N w dt)
// vanishes at the same points and the product stays finite:
//
//     2 sin^2(N d) cot^2(d / 2) = 8N^2 - (4/3) N^2 (1 + 2N^2) d^2
//                                 + (N^2/30 + 4N^4/9 + 16N^6/45) d^4 + O(d^6),
//
// with d = w dt - (2n+1) pi. Inside a narrow guard band the series replaces
// the direct product, which loses most of its digits there.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "decohere/bath_model.hpp"

namespace decohere {

struct QuadratureConfig {
    double abs_tol{1e-10};
    double rel_tol{1e-8};
    std::size_t max_subdivisions{std::size_t{1} << 15};
    double oscillation_resolution{8.0};  // mesh points per period of cos(w t)

    void validate() const;
};

struct IntegralResult {
    double value{0.0};
    double error_estimate{0.0};
    std::size_t evaluations{0};
    bool converged{true};
};

// Guard half-width (in units of w dt) around each pole of tan^2.
double pole_guard_width(long half_cycles) noexcept;

// Odd multiples (2n+1) pi / dt strictly inside (ir, uv).
std::vector<double> singular_points(double interval, double ir, double uv);

// Sorted partition of [ir, uv]: endpoints, a uniform mesh with spacing at most
// 2 pi / (resolution * t), and a ratio-2 grading above ir for wide baths.
std::vector<double> oscillation_mesh(double total_time, double ir, double uv, double resolution = 8.0);

// oscillation_mesh merged with singular_points.
std::vector<double> breakpoints(double interval, double total_time, double ir, double uv,
                                double resolution = 8.0);

// coth(w/2T) (1 - cos w t) I(w) / w^2.
double free_integrand(double omega, const BathSpec& bath, double t);

// 4 coth(w/2T) I(w) [2 sin^2(N w dt)] tan^2(w dt/2) / w^2, finite and
// continuous through the poles of tan^2.
double regularized_pulsed_integrand(double omega, const BathSpec& bath, const PulseSchedule& sched);

// 4 coth(w/2T) (1 - cos w t) I(w) tan^2(w dt/2) / w^2 with t independent of dt.
// Throws std::domain_error on a pole, where this form is not integrable.
double relaxed_pulsed_integrand(double omega, const BathSpec& bath, double interval, double t);

// Adaptive Gauss-Kronrod (7/15) integration over the given partition. The
// panel with the largest error estimate is bisected until the summed estimate
// meets max(abs_tol, rel_tol |value|) or max_subdivisions bisections are used.
// Running out of budget is reported through converged = false.
IntegralResult integrate(const std::function<double(double)>& f, std::span<const double> partition,
                         const QuadratureConfig& config);

IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureConfig& config);

}  // namespace decohere
