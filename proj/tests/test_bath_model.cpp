#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "decohere/bath_model.hpp"

using namespace decohere;
using doctest::Approx;

TEST_SUITE("bath_model") {

TEST_CASE("density follows the power law inside the band") {
    const auto f = SpectralDensity::one_over_f(0.25, 1.0, 80.0);
    CHECK(density_at(f, 2.0) == Approx(0.125));
    const auto o = SpectralDensity::ohmic(0.05, 1.0, 10.0);
    CHECK(density_at(o, 4.0) == Approx(0.2));
    const SpectralDensity general{0.5, 2.0, 1.0, 10.0};
    CHECK(density_at(general, 4.0) == Approx(4.0));
}

TEST_CASE("density vanishes outside the cutoffs, cutoffs inclusive") {
    const auto f = SpectralDensity::one_over_f(0.25, 1.0, 80.0);
    CHECK(density_at(f, 0.5) == 0.0);
    CHECK(density_at(f, 80.5) == 0.0);
    CHECK(density_at(f, 1.0) == Approx(0.25));
    CHECK(density_at(f, 80.0) == Approx(0.25 / 80.0));
    CHECK_THROWS_AS(density_at(f, 0.0), std::domain_error);
    CHECK_THROWS_AS(density_at(f, -1.0), std::domain_error);
}

TEST_CASE("invalid densities are rejected") {
    CHECK_THROWS_AS(SpectralDensity::one_over_f(0.0, 1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity::one_over_f(1.0, 0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity::ohmic(1.0, 2.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity::ohmic(1.0, 1.0, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
    BathSpec b{SpectralDensity::ohmic(1.0, 1.0, 2.0), -0.1};
    CHECK_THROWS_AS(b.validate(), std::invalid_argument);
}

TEST_CASE("thermal factor") {
    CHECK(thermal_factor(0.0, 3.0) == 1.0);
    CHECK(thermal_factor(1.0, 1e-3) == Approx(2000.000166666664).epsilon(1e-14));
    CHECK(thermal_factor(1.0, 2.0) == Approx(1.0 / std::tanh(1.0)).epsilon(1e-15));
    CHECK(thermal_factor(1e-3, 10.0) == 1.0);
    // monotone in T
    double prev = 1.0;
    for (double T : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        const double c = thermal_factor(T, 1.0);
        CHECK(c >= prev);
        prev = c;
    }
    CHECK_THROWS_AS(thermal_factor(1.0, 0.0), std::domain_error);
}

TEST_CASE("thermal time") {
    CHECK_FALSE(BathSpec{{}, 0.0}.thermal_time().has_value());
    CHECK(*BathSpec{{}, 4.0}.thermal_time() == Approx(0.25));
}

TEST_CASE("filter factor and poles") {
    constexpr double pi = std::numbers::pi;
    CHECK(*filter_factor(1.0, pi / 2.0) == Approx(1.0));
    CHECK(*filter_factor(0.025, 1.0) == Approx(std::pow(std::tan(0.0125), 2)));
    CHECK_FALSE(filter_factor(1.0, pi).has_value());
    CHECK_FALSE(filter_factor(0.5, 6.0 * pi).has_value());
    CHECK(filter_factor(1.0, pi * (1.0 + 1e-9)).has_value());

    const auto p = nearest_pole(5.0 * pi + 0.1);
    CHECK(p.index == 2);
    CHECK(p.offset == Approx(0.1));
    CHECK(nearest_pole(0.2).index == 0);
}

TEST_CASE("pulse schedule") {
    const PulseSchedule s(0.025, 100);
    CHECK(s.total_time() == Approx(5.0));
    CHECK_THROWS_AS(PulseSchedule(0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(PulseSchedule(1.0, 0), std::invalid_argument);
}

}
