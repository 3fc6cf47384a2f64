#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>

#include "stieltjes/error.hpp"

namespace stieltjes {

/// Argument of every zeta-family function: sigma + i t in binary64.
using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

inline bool is_finite(complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline complex require_finite(complex z, const char* what) {
    if (!is_finite(z))
        throw computation_error(std::string(what) + ": non-finite result");
    return z;
}

inline double require_finite(double x, const char* what) {
    if (!std::isfinite(x))
        throw computation_error(std::string(what) + ": non-finite result");
    return x;
}

/// Neumaier-compensated accumulator. Terms are folded in the order they are
/// added, so the result is reproducible for a fixed summation order.
template <typename T>
class compensated_sum {
public:
    compensated_sum() = default;
    explicit compensated_sum(T initial) : sum_(initial) {}

    void add(T x) {
        T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    compensated_sum& operator+=(T x) {
        add(x);
        return *this;
    }

    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

/// Complex counterpart, compensating real and imaginary parts separately.
class compensated_complex_sum {
public:
    void add(complex z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    compensated_complex_sum& operator+=(complex z) {
        add(z);
        return *this;
    }
    complex value() const { return {re_.value(), im_.value()}; }

private:
    compensated_sum<double> re_;
    compensated_sum<double> im_;
};

/// exp(z) - 1 without cancellation for small |z|.
inline complex expm1(complex z) {
    const double x = z.real();
    const double y = z.imag();
    const double half_sin = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin, std::exp(x) * std::sin(y)};
}

/// n^{-s} evaluated as exp(-s log n).
inline complex inverse_power(double n, complex s) {
    return std::exp(-s * std::log(n));
}

/// n^{-s} - (n+1)^{-s}, accurate even when the two powers nearly cancel.
inline complex forward_difference_inverse_power(double n, complex s) {
    return -inverse_power(n, s) * expm1(-s * std::log1p(1.0 / n));
}

namespace detail {

inline std::uint64_t saturating_pow(std::uint64_t base, unsigned k) {
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (base != 0 && r > cap / base)
            return cap;
        r *= base;
    }
    return r;
}

} // namespace detail

/// floor(n^{1/k}), exact at perfect powers.
inline std::uint64_t integer_root(std::uint64_t n, unsigned k) {
    if (k == 0)
        throw domain_error("integer_root: k must be positive");
    if (k == 1 || n < 2)
        return n;
    auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    while (r > 0 && detail::saturating_pow(r, k) > n)
        --r;
    while (detail::saturating_pow(r + 1, k) <= n)
        ++r;
    return r;
}

inline std::uint64_t isqrt(std::uint64_t n) { return integer_root(n, 2); }

/// Euler's constant C from H_n - log n with Euler-Maclaurin tail terms,
/// computed once in extended precision.
inline double euler_gamma() {
    static const double value = [] {
        constexpr int n = 1000;
        long double harmonic = 0.0L;
        for (int k = 1; k <= n; ++k)
            harmonic += 1.0L / k;
        const long double nn = n;
        const long double inv2 = 1.0L / (nn * nn);
        return static_cast<double>(harmonic - std::log(nn) - 1.0L / (2.0L * nn) +
                                   inv2 / 12.0L - inv2 * inv2 / 120.0L +
                                   inv2 * inv2 * inv2 / 252.0L);
    }();
    return value;
}

/// B_2, B_4, ..., B_16.
inline constexpr std::array<double, 8> bernoulli_even = {
    1.0 / 6.0,   -1.0 / 30.0,    1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0,
};

} // namespace stieltjes
