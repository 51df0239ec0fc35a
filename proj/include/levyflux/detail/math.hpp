#pragma once

#include <cmath>

namespace levyflux::detail {

inline constexpr double kSqrt2Pi = 2.5066282746310005024;

inline double norm_pdf(double z) { return std::exp(-0.5 * z * z) / kSqrt2Pi; }
inline double norm_cdf(double z) { return 0.5 * std::erfc(-z / 1.4142135623730950488); }
inline double norm_upper(double z) { return 0.5 * std::erfc(z / 1.4142135623730950488); }

// Gamma(a, theta) density at w, stable against large a via lgamma.
inline double gamma_pdf(double w, double a, double theta) {
    if (w < 0.0) return 0.0;
    if (w == 0.0) {
        if (a > 1.0) return 0.0;
        if (a == 1.0) return 1.0 / theta;
        return std::numeric_limits<double>::infinity();
    }
    return std::exp((a - 1.0) * std::log(w) - w / theta - std::lgamma(a) - a * std::log(theta));
}

} // namespace levyflux::detail
