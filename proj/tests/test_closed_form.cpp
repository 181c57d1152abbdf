#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "decohere/closed_form.hpp"
#include "decohere/decoherence.hpp"

using namespace decohere;
using doctest::Approx;

TEST_SUITE("closed_form") {

TEST_CASE("fig-1 plateau and finite-time values") {
    const auto spec = SpectralDensity::one_over_f(0.25, 1.0, 80.0);
    CHECK(gamma_pulsed_t0_plateau(spec, 0.025) == Approx(8.4161602961577333e-4).epsilon(1e-12));
    CHECK(gamma_pulsed_t0_closed(spec, 0.025, 5.0) == Approx(8.12255754486742461e-4).epsilon(1e-11));
    CHECK(gamma_pulsed_t0_closed(spec, PulseSchedule(0.025, 100)) == Approx(8.12255754486742461e-4).epsilon(1e-11));
    CHECK(gamma_pulsed_t0_closed(spec, 0.025, 0.0) == 0.0);
}

TEST_CASE("thermal correction") {
    CHECK(gamma_pulsed_thermal_closed(0.5, 0.1, 2.0, 3.0) == Approx(9.33700169789749442e-3).epsilon(1e-12));
    CHECK(gamma_pulsed_thermal_closed(0.5, 0.1, 2.0, 0.0) == 0.0);
    CHECK_THROWS_AS(gamma_pulsed_thermal_closed(0.5, 0.1, 0.0, 1.0), std::domain_error);
}

TEST_CASE("closed form approaches the plateau at long times") {
    const auto spec = SpectralDensity::one_over_f(0.25, 1.0, 80.0);
    const double plateau = gamma_pulsed_t0_plateau(spec, 0.025);
    CHECK(gamma_pulsed_t0_closed(spec, 0.025, 1e4) == Approx(plateau).epsilon(1e-4));
}

TEST_CASE("preconditions") {
    const auto spec = SpectralDensity::one_over_f(0.25, 1.0, 80.0);
    CHECK_THROWS_AS(gamma_pulsed_t0_plateau(spec, std::numbers::pi / 80.0), std::domain_error);
    CHECK_THROWS_AS(gamma_pulsed_t0_plateau(SpectralDensity::ohmic(0.1, 1.0, 80.0), 0.01), std::domain_error);
}

TEST_CASE("validity regimes") {
    const auto spec = SpectralDensity::one_over_f(0.5, 1.0, 100.0);
    CHECK(check_validity(spec, 0.005, 0.0).regime == Regime::valid);
    CHECK(check_validity(spec, 0.02, 0.0).regime == Regime::marginal);
    CHECK(check_validity(spec, 0.04, 0.0).regime == Regime::invalid);
    CHECK(check_validity(spec, 0.005, 0.1).regime == Regime::valid);
    CHECK(check_validity(spec, 0.005, 10.0).regime == Regime::marginal);
    CHECK(check_validity(SpectralDensity::ohmic(0.5, 1.0, 100.0), 0.005, 0.0).regime == Regime::invalid);
    CHECK_FALSE(check_validity(spec, 0.02, 0.0).reasons.empty());
    CHECK(to_string(Regime::marginal) == "marginal");
}

TEST_CASE("closed form tracks quadrature in the valid regime") {
    const BathSpec bath{SpectralDensity::one_over_f(1.0, 0.01, 1.0), 0.0};
    const PulseSchedule sched(0.25, 200);  // uv t = 100
    const double quad = gamma_pulsed(bath, sched).gamma;
    const double closed = gamma_pulsed_t0_closed(bath.density, sched);
    CHECK(std::abs(quad - closed) / quad <= 0.10);
}

}
