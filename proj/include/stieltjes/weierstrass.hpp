#pragma once

// Truncated genus-one product for e^x - e^a over the zeros a + 2 n pi i:
//
//   e^x - e^a = (1 - e^a) e^{-x/(e^a - 1)} prod_n (1 - x/(a + 2n pi i)) e^{+-x/(a + 2n pi i)}

#include <cmath>
#include <cstdint>
#include <optional>

#include "stieltjes/error.hpp"
#include "stieltjes/numeric.hpp"

namespace stieltjes {

/// Sign of the exponential convergence factor attached to each zero.
/// `as_printed` is e^{-x/z_n}; `corrected` is the genus-one e^{+x/z_n}.
enum class ExponentSign { as_printed, corrected };

inline const char* to_string(ExponentSign s) {
    return s == ExponentSign::as_printed ? "as_printed" : "corrected";
}

struct ProductEvaluation {
    complex x;
    complex a;
    std::uint64_t terms = 0; // N: the product runs over n = -N..N
    complex product_value;
    complex direct_value;
    /// |product - direct| / |direct|; empty when direct is zero.
    std::optional<double> relative_error;
    double absolute_error = 0.0;
    ExponentSign exponent_sign = ExponentSign::corrected;
};

inline constexpr double weierstrass_max_re = 700.0;

inline ProductEvaluation exp_difference_product(complex x, complex a, std::uint64_t N, ExponentSign sign) {
    if (N < 1)
        throw domain_error("exp_difference_product: N must be at least 1");
    if (!is_finite(x) || !is_finite(a))
        throw domain_error("exp_difference_product: non-finite argument");
    if (x.real() > weierstrass_max_re || a.real() > weierstrass_max_re)
        throw domain_error("exp_difference_product: e^x or e^a would overflow");
    const complex em1 = expm1(a); // e^a - 1
    if (std::abs(em1) < 1e-12)
        throw domain_error("exp_difference_product: a is a multiple of 2 pi i; 1 - e^a vanishes");

    const double sigma = sign == ExponentSign::corrected ? 1.0 : -1.0;
    const complex two_pi_i{0.0, 2.0 * pi};
    complex product{1.0, 0.0};
    for (std::uint64_t n = 1; n <= N; ++n) {
        const complex up = a + static_cast<double>(n) * two_pi_i;
        const complex down = a - static_cast<double>(n) * two_pi_i;
        const complex pair = (1.0 - x / up) * (1.0 - x / down) * std::exp(sigma * x * (1.0 / up + 1.0 / down));
        product *= pair;
    }
    product *= (1.0 - x / a) * std::exp(sigma * x / a);
    product *= (1.0 - std::exp(a)) * std::exp(-x / em1);

    ProductEvaluation out;
    out.x = x;
    out.a = a;
    out.terms = N;
    out.exponent_sign = sign;
    out.product_value = require_finite(product, "exp_difference_product");
    out.direct_value = std::exp(x) - std::exp(a);
    out.absolute_error = std::abs(out.product_value - out.direct_value);
    if (std::abs(out.direct_value) > 0.0)
        out.relative_error = out.absolute_error / std::abs(out.direct_value);
    return out;
}

struct SignComparison {
    ProductEvaluation as_printed;
    ProductEvaluation corrected;
    /// The choice whose product lies closer to e^x - e^a.
    ExponentSign closer = ExponentSign::corrected;
};

inline SignComparison compare_exponent_signs(complex x, complex a, std::uint64_t N) {
    SignComparison out{exp_difference_product(x, a, N, ExponentSign::as_printed),
                       exp_difference_product(x, a, N, ExponentSign::corrected),
                       ExponentSign::corrected};
    out.closer = out.as_printed.absolute_error < out.corrected.absolute_error ? ExponentSign::as_printed
                                                                              : ExponentSign::corrected;
    return out;
}

/// e^{a + 2 n pi i} = e^a to 1e-12 relative for all |n| <= count.
inline bool zero_set_check(complex a, std::uint64_t count) {
    if (count < 1)
        throw domain_error("zero_set_check: count must be at least 1");
    const complex base = std::exp(a);
    for (std::int64_t n = -static_cast<std::int64_t>(count); n <= static_cast<std::int64_t>(count); ++n) {
        const complex shifted = std::exp(a + complex{0.0, 2.0 * pi * static_cast<double>(n)});
        if (std::abs(shifted - base) > 1e-12 * std::abs(base))
            return false;
    }
    return true;
}

} // namespace stieltjes
