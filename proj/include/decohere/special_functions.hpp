// special_functions.hpp: cosine and sine integrals.
//
//   Ci(x) = gamma_E + ln x + int_0^x (cos u - 1)/u du
//   Si(x) = int_0^x sin u / u du
//
// Power series up to x = 4, auxiliary functions f, g from the continued
// fraction of E1(ix) beyond:  Ci = f sin x - g cos x,  Si = pi/2 - f cos x - g sin x.

#pragma once

namespace decohere {

// Euler-Mascheroni constant.
inline constexpr double euler_mascheroni = 0.57721566490153286060651209008240243;

inline constexpr double ci_si_switch = 4.0;

// Throws std::domain_error for x <= 0.
double cosine_integral(double x);

// Throws std::domain_error for x < 0.
double sine_integral(double x);

namespace detail {

struct CiSi {
    double ci;
    double si;
};

// Both branches are exposed for continuity checks at the switch point.
CiSi cisi_series(double x);
CiSi cisi_continued_fraction(double x);

}  // namespace detail

}  // namespace decohere
