#pragma once

// Independent reference computations. None of these share code with the
// library: slow, obvious algorithms only.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

inline constexpr long double pi_l = 3.141592653589793238462643383279502884L;

/// mu(n) by trial division.
inline int mobius(std::uint64_t n) {
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        sign = -sign;
    }
    if (n > 1)
        sign = -sign;
    return sign;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return false;
    return true;
}

inline std::uint64_t divisor_count(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t d = 1; d <= n; ++d)
        c += n % d == 0;
    return c;
}

inline std::int64_t mertens(std::uint64_t n) {
    std::int64_t m = 0;
    for (std::uint64_t k = 1; k <= n; ++k)
        m += mobius(k);
    return m;
}

/// log p when n = p^k, else 0 (n >= 2).
inline double prime_power_log(std::uint64_t n) {
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (n % p != 0)
            continue;
        while (n % p == 0)
            n /= p;
        return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }
    return 0.0;
}

/// Euler's constant as H_n - log n - 1/(2n) + 1/(12 n^2) - 1/(120 n^4),
/// n = 10^5, long double.
inline double euler_gamma() {
    const long double n = 100000.0L;
    long double h = 0.0L;
    for (int k = 100000; k >= 1; --k)
        h += 1.0L / k;
    return static_cast<double>(h - std::log(n) - 1.0L / (2 * n) + 1.0L / (12 * n * n) -
                               1.0L / (120 * n * n * n * n));
}

/// zeta(2) as the direct sum to N plus the integral tail 1/N with its
/// trapezoid corrections.
inline double zeta2() {
    const long double N = 1000000.0L;
    long double s = 0.0L;
    for (long k = 1000000; k >= 1; --k)
        s += 1.0L / (static_cast<long double>(k) * k);
    // sum_{k>N} k^-2 = 1/N - 1/(2N^2) + 1/(6N^3) - ...
    s += 1.0L / N - 1.0L / (2 * N * N) + 1.0L / (6 * N * N * N);
    return static_cast<double>(s);
}

/// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double eps) {
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double tol, int depth) {
            const double mid = 0.5 * (lo + hi);
            const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
            const double flm = f(lm), frm = f(rm);
            const double left = (mid - lo) / 6.0 * (flo + 4 * flm + fmid);
            const double right = (hi - mid) / 6.0 * (fmid + 4 * frm + fhi);
            if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol)
                return left + right + (left + right - whole) / 15.0;
            return rec(lo, mid, flo, flm, fmid, left, tol / 2, depth - 1) +
                   rec(mid, hi, fmid, frm, fhi, right, tol / 2, depth - 1);
        };
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return rec(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4 * fm + fb), eps, 60);
}

/// Principal-value li(x) = integral_0^x [1/log t - 1/(t-1)] dt + log(x-1),
/// where the bracket is smooth at t = 1.
inline double li(double x) {
    auto f = [](double t) {
        if (t <= 0.0)
            return 1.0;
        const double u = t - 1.0;
        if (std::abs(u) < 1e-3)
            return 0.5 - u / 12.0 + u * u / 24.0 - 19.0 * u * u * u / 720.0;
        return 1.0 / std::log(t) - 1.0 / u;
    };
    // The integrand has a log singularity in its derivative at 0; split so
    // Simpson sees the smooth part mostly.
    double total = simpson(f, 0.0, 1e-6, 1e-16) + simpson(f, 1e-6, std::min(x, 2.0), 1e-14);
    for (double lo = 2.0; lo < x; lo *= 2.0)
        total += simpson(f, lo, std::min(2.0 * lo, x), 1e-14 * lo);
    return total + std::log(x - 1.0);
}

/// D_k for k = 0..8 at 30 digits, truncated to binary64 (mpmath, from the
/// Taylor coefficients of zeta(s) - 1/(s-1) at 0).
inline constexpr std::array<double, 9> dk_reference = {
    0.5,
    -0.0810614667953272582196702635944,
    -0.00635645590858485121010002672996,
    0.00471116686225444776106081336638,
    0.00289681198629204101278047225899,
    0.00023290755845472453598583779582,
    -0.000936825130050929504283508545399,
    -0.000849823765001669151706027602351,
    -0.000232431735511559582855690063717,
};

/// First zeros of zeta on the critical line.
inline constexpr std::array<double, 10> first_zeros = {
    14.134725141734693, 21.022039638771555, 25.010857580145688, 30.424876125859513,
    32.935061587739189, 37.586178158825671, 40.918719012147495, 43.327073280914999,
    48.005150881167159, 49.773832477672302,
};

} // namespace oracle
