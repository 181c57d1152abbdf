#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <stdexcept>

#include "decohere/special_functions.hpp"

using namespace decohere;
using doctest::Approx;

namespace {

// Si(x) by composite Simpson on sin(u)/u.
double si_simpson(double x) {
    const int n = 20000;
    const double h = x / n;
    auto f = [](double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; };
    double s = f(0.0) + f(x);
    for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Ci(x) = gamma + ln x + int_0^x (cos u - 1)/u du.
double ci_simpson(double x) {
    const int n = 20000;
    const double h = x / n;
    auto f = [](double u) { return u == 0.0 ? 0.0 : (std::cos(u) - 1.0) / u; };
    double s = f(0.0) + f(x);
    for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return euler_mascheroni + std::log(x) + s * h / 3.0;
}

}  // namespace

TEST_SUITE("special_functions") {

TEST_CASE("reference values") {
    struct Row {
        double x, ci, si;
    };
    const Row rows[] = {
        {1e-8, -17.8434650790508326, 1.0e-8},
        {0.5, -0.177784078806612901, 0.493107418043066689},
        {1.0, 0.337403922900968135, 0.946083070367183015},
        {4.0, -0.140981697886930412, 1.75820313894905306},
        {7.0, 0.0766952784821845184, 1.45459661424809359},
        {10.0, -0.0454564330044553726, 1.65834759421887405},
        {25.0, -0.00684859717970259092, 1.53148255099996132},
        {100.0, -0.00514882514261049214, 1.56222546688905629},
        {1000.0, 0.000826315511090682282, 1.57023312196877122},
        {1e6, -3.49994438922720493e-7, 1.57079539004311908},
    };
    for (const auto& r : rows) {
        CAPTURE(r.x);
        CHECK(std::abs(cosine_integral(r.x) - r.ci) <= 1e-13 * std::max(1.0, std::abs(r.ci)) + 1e-15);
        CHECK(std::abs(sine_integral(r.x) - r.si) <= 1e-13 * std::max(1.0, std::abs(r.si)) + 1e-15);
    }
}

TEST_CASE("agreement with direct numerical integration") {
    for (double x : {0.2, 1.3, 3.9, 4.1, 6.0, 12.0, 30.0}) {
        CAPTURE(x);
        CHECK(sine_integral(x) == Approx(si_simpson(x)).epsilon(1e-10));
        CHECK(cosine_integral(x) == Approx(ci_simpson(x)).epsilon(1e-9));
    }
}

TEST_CASE("series and continued fraction agree at the switch") {
    for (double x : {ci_si_switch * 0.9, ci_si_switch, ci_si_switch * 1.1}) {
        const auto a = detail::cisi_series(x);
        const auto b = detail::cisi_continued_fraction(x);
        CHECK(std::abs(a.ci - b.ci) < 1e-10);
        CHECK(std::abs(a.si - b.si) < 1e-10);
    }
    const double below = std::nextafter(ci_si_switch, 0.0);
    const double above = std::nextafter(ci_si_switch, 10.0);
    CHECK(std::abs(cosine_integral(below) - cosine_integral(above)) < 1e-10);
    CHECK(std::abs(sine_integral(below) - sine_integral(above)) < 1e-10);
}

TEST_CASE("limits and symmetry") {
    CHECK(sine_integral(0.0) == 0.0);
    CHECK_THROWS_AS(sine_integral(-2.0), std::domain_error);
    CHECK(sine_integral(1e9) == Approx(std::numbers::pi / 2.0).epsilon(1e-9));
    CHECK(std::abs(cosine_integral(1e9)) < 1e-8);
}

}
