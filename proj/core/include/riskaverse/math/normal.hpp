#pragma once

#include <cmath>

namespace riskaverse {

inline constexpr double inv_sqrt_2pi = 0.39894228040143267794;
inline constexpr double sqrt_2pi = 2.5066282746310005024;

/// Standard normal density.
inline double norm_pdf(double z) {
    return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

/// Standard normal CDF via the complementary error function. Spread values
/// are small differences of large terms, so the erfc route is used: it keeps
/// relative accuracy in the tails instead of cancelling against 1.
inline double norm_cdf(double z) {
    return 0.5 * std::erfc(-z * 0.7071067811865475244);
}

namespace detail {

// Acklam's rational approximation for the normal quantile (|error| < 1.15e-9
// before refinement).
inline double norm_quantile_seed(double u) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double u_low = 0.02425;
    if (u < u_low) {
        const double q = std::sqrt(-2.0 * std::log(u));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (u <= 1.0 - u_low) {
        const double q = u - 0.5;
        const double t = q * q;
        return (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * q /
               (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
    }
    const double q = std::sqrt(-2.0 * std::log(1.0 - u));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

} // namespace detail

/// Inverse standard normal CDF. Acklam seed polished by one Halley step
/// against norm_cdf, giving close to full double precision on (0,1).
inline double norm_quantile(double u) {
    double z = detail::norm_quantile_seed(u);
    const double e = norm_cdf(z) - u;
    const double g = e / norm_pdf(z);          // Newton step
    z -= g / (1.0 + 0.5 * g * z);              // Halley correction
    return z;
}

} // namespace riskaverse
