#include "decohere/special_functions.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace decohere {

namespace detail {

CiSi cisi_series(double x) {
    // Ci - gamma_E - ln x = sum_{k>=1} (-1)^k x^{2k} / (2k (2k)!)
    // Si                  = sum_{k>=0} (-1)^k x^{2k+1} / ((2k+1) (2k+1)!)
    double ci_sum = 0.0;
    double si_sum = x;
    double power = x;  // x^m / m!
    for (int m = 2; m < 200; ++m) {
        power *= x / static_cast<double>(m);
        const int k = m / 2;
        const double term = (k % 2 == 1 ? -power : power) / static_cast<double>(m);
        if (m % 2 == 0)
            ci_sum += term;
        else
            si_sum += term;
        if (m > 4 && power < 1e-18) break;
    }
    return {euler_mascheroni + std::log(x) + ci_sum, si_sum};
}

CiSi cisi_continued_fraction(double x) {
    // Modified Lentz evaluation of h = e^{ix} E1(ix)
    //   = 1/(1+ix - 1/(3+ix - 4/(5+ix - ...))),
    // whose parts are the auxiliary functions: g = Re h, f = -Im h.
    using cd = std::complex<double>;
    constexpr double tiny = 1e-300;
    constexpr double tol = 4.0 * std::numeric_limits<double>::epsilon();
    cd b(1.0, x);
    cd c(1.0 / tiny, 0.0);
    cd d = 1.0 / b;
    cd h = d;
    for (int i = 1; i < 500; ++i) {
        const double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cd del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < tol) break;
    }
    const double f = -h.imag();
    const double g = h.real();
    const double s = std::sin(x);
    const double co = std::cos(x);
    return {f * s - g * co, std::numbers::pi / 2.0 - f * co - g * s};
}

}  // namespace detail

double cosine_integral(double x) {
    if (!(x > 0.0)) throw std::domain_error("cosine_integral: x must be positive");
    if (x <= ci_si_switch) return detail::cisi_series(x).ci;
    return detail::cisi_continued_fraction(x).ci;
}

double sine_integral(double x) {
    if (!(x >= 0.0)) throw std::domain_error("sine_integral: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x <= ci_si_switch) return detail::cisi_series(x).si;
    return detail::cisi_continued_fraction(x).si;
}

}  // namespace decohere
