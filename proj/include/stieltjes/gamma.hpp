#pragma once

#include <cmath>
#include <complex>

#include "stieltjes/error.hpp"
#include "stieltjes/numeric.hpp"

namespace stieltjes {

namespace detail {

inline bool is_nonpositive_integer(complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::nearbyint(z.real());
}

// Stirling series for log Gamma(z), Re z >= 1/2, after shifting |z| past 15.
// The result is a logarithm of Gamma(z), not necessarily the principal
// branch of log Gamma; exponentiating it is exact up to rounding.
inline complex log_gamma_right(complex z) {
    complex shift_log{0.0, 0.0};
    while (std::abs(z) < 15.0) {
        shift_log += std::log(z);
        z += 1.0;
    }
    const complex inv = 1.0 / z;
    const complex inv2 = inv * inv;
    complex series{0.0, 0.0};
    complex power = inv;
    for (std::size_t k = 0; k < bernoulli_even.size(); ++k) {
        const double m = 2.0 * static_cast<double>(k + 1);
        series += bernoulli_even[k] / (m * (m - 1.0)) * power;
        power *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series - shift_log;
}

} // namespace detail

/// A logarithm of Gamma(z) (branch unspecified). Reflection is used for
/// Re z < 1/2.
inline complex log_gamma(complex z) {
    if (detail::is_nonpositive_integer(z))
        throw pole_error("gamma: pole at non-positive integer");
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        return std::log(pi) - std::log(std::sin(pi * z)) - detail::log_gamma_right(1.0 - z);
    }
    return detail::log_gamma_right(z);
}

inline complex gamma(complex z) { return require_finite(std::exp(log_gamma(z)), "gamma"); }

/// Gauss's factorial function Pi(x) = Gamma(x + 1).
inline complex gauss_pi(complex x) {
    if (detail::is_nonpositive_integer(x + 1.0))
        throw pole_error("gauss_pi: pole at negative integer");
    return gamma(x + 1.0);
}

} // namespace stieltjes
