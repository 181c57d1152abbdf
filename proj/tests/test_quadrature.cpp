#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <stdexcept>

#include "decohere/decoherence.hpp"
#include "decohere/quadrature.hpp"

using namespace decohere;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

// Composite Simpson on a uniform grid, used as a slow independent check.
template <class F>
double simpson(F f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("elementary integrals") {
    const QuadratureConfig cfg;
    auto r = integrate([](double x) { return std::sin(x); }, 0.0, pi, cfg);
    CHECK(r.converged);
    CHECK(r.value == Approx(2.0).epsilon(1e-12));
    r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0, cfg);
    CHECK(r.value == Approx(2.0 - 2e-6).epsilon(1e-8));
    CHECK(r.evaluations % 15 == 0);
}

TEST_CASE("partition points do not change the value") {
    const QuadratureConfig cfg;
    auto f = [](double x) { return std::exp(-x) * std::cos(5.0 * x); };
    const std::vector<double> fine{0.0, 0.3, 1.0, 2.5, 4.0};
    const double a = integrate(f, 0.0, 4.0, cfg).value;
    const double b = integrate(f, fine, cfg).value;
    CHECK(a == Approx(b).epsilon(1e-10));
}

TEST_CASE("invalid partitions and configs") {
    const QuadratureConfig cfg;
    const std::vector<double> bad{0.0, 1.0, 1.0};
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, bad, cfg), std::invalid_argument);
    QuadratureConfig neg;
    neg.abs_tol = -1.0;
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, neg), std::invalid_argument);
}

TEST_CASE("subdivision cap reports non-convergence") {
    QuadratureConfig cfg;
    cfg.max_subdivisions = 2;
    cfg.rel_tol = 1e-14;
    const auto r = integrate([](double x) { return std::sin(200.0 * x); }, 0.0, 10.0, cfg);
    CHECK_FALSE(r.converged);
}

TEST_CASE("singular points and mesh") {
    const auto poles = singular_points(0.5, 1.0, 20.0);
    REQUIRE(poles.size() == 2);
    CHECK(poles[0] == Approx(2.0 * pi));
    CHECK(poles[1] == Approx(6.0 * pi));
    CHECK(singular_points(0.025, 1.0, 80.0).empty());

    const auto mesh = oscillation_mesh(5.0, 1.0, 80.0, 8.0);
    CHECK(mesh.front() == 1.0);
    CHECK(mesh.back() == 80.0);
    for (std::size_t i = 1; i < mesh.size(); ++i) {
        CHECK(mesh[i] > mesh[i - 1]);
        CHECK(mesh[i] - mesh[i - 1] <= 2.0 * pi / (8.0 * 5.0) * (1.0 + 1e-12));
    }
    const auto bp = breakpoints(0.5, 3.0, 1.0, 20.0);
    for (double p : poles) CHECK(std::find(bp.begin(), bp.end(), p) != bp.end());
}

TEST_CASE("regularized integrand is continuous across the guard band") {
    const BathSpec bath{SpectralDensity::ohmic(0.05, 1.0, 40.0), 0.5};
    for (long n : {1L, 3L, 40L, 5000L}) {
        const PulseSchedule sched(0.5, n);
        const double g = pole_guard_width(n);
        for (double pole_phase : {pi, 5.0 * pi}) {
            for (double side : {-1.0, 1.0}) {
                const double inside = (pole_phase + side * g * (1.0 - 1e-9)) / 0.5;
                const double outside = (pole_phase + side * g * (1.0 + 1e-9)) / 0.5;
                const double fi = regularized_pulsed_integrand(inside, bath, sched);
                const double fo = regularized_pulsed_integrand(outside, bath, sched);
                CHECK(std::abs(fi - fo) <= 1e-6 * std::abs(fi));
            }
            const double at = regularized_pulsed_integrand(pole_phase / 0.5, bath, sched);
            CHECK(std::isfinite(at));
            // limit 32 N^2 coth I / w^2
            const double w = pole_phase / 0.5;
            const double expect = 32.0 * n * n * thermal_factor(0.5, w) * density_at(bath.density, w) / (w * w);
            CHECK(at == Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("relaxed integrand rejects a non-removable pole") {
    const BathSpec bath{SpectralDensity::ohmic(0.05, 1.0, 40.0), 0.0};
    CHECK_THROWS_AS(relaxed_pulsed_integrand(2.0 * pi, bath, 0.5, 3.3), std::domain_error);
    CHECK(relaxed_pulsed_integrand(2.0, bath, 0.5, 3.3) > 0.0);
}

TEST_CASE("integrands are nonnegative and vanish outside the band") {
    const BathSpec bath{SpectralDensity::one_over_f(0.25, 1.0, 80.0), 3.0};
    const PulseSchedule sched(0.1, 7);
    for (double w = 1.0; w <= 80.0; w += 0.37) {
        CHECK(free_integrand(w, bath, 2.0) >= 0.0);
        CHECK(regularized_pulsed_integrand(w, bath, sched) >= 0.0);
    }
    CHECK_THROWS_AS(free_integrand(0.5, bath, 1.0), std::domain_error);
}

TEST_CASE("quadrature agrees with a brute-force Simpson oracle") {
    const BathSpec bath{SpectralDensity::ohmic(0.05, 1.0, 10.0), 0.5};
    const PulseSchedule sched(0.5, 3);  // poles at 2 pi and 6 pi inside the band
    const auto fast = gamma_pulsed(bath, sched);
    const auto slow = simpson([&](double w) { return regularized_pulsed_integrand(w, bath, sched); }, 1.0, 10.0,
                              400000);
    CHECK(fast.gamma == Approx(slow).epsilon(1e-8));
}

TEST_CASE("doubling the oscillation resolution changes results within the error estimate") {
    const BathSpec bath{SpectralDensity::one_over_f(0.25, 1.0, 80.0), 0.0};
    QuadratureConfig base;
    QuadratureConfig fine;
    fine.oscillation_resolution = 16.0;
    const auto a = gamma_free(bath, 5.0, base);
    const auto b = gamma_free(bath, 5.0, fine);
    CHECK(std::abs(a.gamma - b.gamma) <= a.error_estimate + b.error_estimate + 1e-8 * a.gamma);
}

}
