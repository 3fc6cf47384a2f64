#pragma once

/// @file zeta.hpp
/// Riemann zeta and its relatives in binary64: Euler-Maclaurin evaluation,
/// the completed function, xi(t) on the critical line, zero scanning, and
/// the Taylor constants D_k of zeta(s) - 1/(s-1) about s = 0.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stieltjes/error.hpp"
#include "stieltjes/gamma.hpp"
#include "stieltjes/numeric.hpp"

namespace stieltjes {

/// Region in which zeta() is validated to 1e-10 relative accuracy.
struct ZetaBox {
    static constexpr double min_re = -10.0;
    static constexpr double max_re = 10.0;
    static constexpr double max_abs_im = 120.0;

    static bool contains(complex s) {
        return s.real() >= min_re && s.real() <= max_re && std::abs(s.imag()) <= max_abs_im;
    }
};

namespace detail {

inline void require_in_box(complex s, const char* what) {
    if (!is_finite(s))
        throw domain_error(std::string(what) + ": non-finite argument");
    if (!ZetaBox::contains(s))
        throw domain_error(std::string(what) + ": argument outside the validated box "
                                               "Re in [-10, 10], |Im| <= 120");
}

// (exp(w) - 1) / w, including w = 0.
inline complex expm1_over(complex w) {
    if (w == complex{0.0, 0.0})
        return {1.0, 0.0};
    if (std::abs(w) < 1e-3) {
        // Taylor series; seven terms reach binary64 precision here
        complex term{1.0, 0.0}, sum{1.0, 0.0};
        for (int j = 2; j <= 8; ++j) {
            term *= w / static_cast<double>(j);
            sum += term;
        }
        return sum;
    }
    return expm1(w) / w;
}

// Euler-Maclaurin with N terms and Bernoulli corrections through B_16.
// With subtract_pole the 1/(s-1) term is removed analytically, so the
// result is finite at s = 1.
inline complex zeta_euler_maclaurin(complex s, bool subtract_pole) {
    const int terms = std::max(30, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))));
    const double big_n = terms;
    compensated_complex_sum head;
    for (int n = 1; n < terms; ++n)
        head += inverse_power(n, s);

    const double log_n = std::log(big_n);
    const complex n_pow = std::exp(-s * log_n); // N^{-s}
    complex result = head.value() + 0.5 * n_pow;
    if (subtract_pole) {
        // (N^{1-s} - 1) / (s - 1)
        result += -log_n * expm1_over((1.0 - s) * log_n);
    } else {
        result += n_pow * big_n / (s - 1.0);
    }

    complex rising = s;                  // s (s+1) ... (s+2k-2)
    complex power = n_pow / big_n;       // N^{-s-2k+1}
    double factorial = 2.0;              // (2k)!
    for (std::size_t k = 1; k <= bernoulli_even.size(); ++k) {
        result += bernoulli_even[k - 1] / factorial * rising * power;
        const double a = static_cast<double>(2 * k - 1);
        rising *= (s + a) * (s + a + 1.0);
        power /= big_n * big_n;
        factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return result;
}

// Below this real part the functional equation replaces direct summation,
// whose terms N^{-s} would otherwise cancel to many digits.
inline constexpr double reflection_threshold = -1.0;

inline complex zeta_reflected(complex s) {
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
    const complex one_minus = 1.0 - s;
    const complex log_factor = s * std::log(2.0) + (s - 1.0) * std::log(pi) + log_gamma(one_minus);
    return std::exp(log_factor) * std::sin(0.5 * pi * s) * zeta_euler_maclaurin(one_minus, false);
}

} // namespace detail

/// zeta(s) for s != 1 inside ZetaBox.
inline complex zeta(complex s) {
    detail::require_in_box(s, "zeta");
    if (s == complex{1.0, 0.0})
        throw pole_error("zeta: pole at s = 1");
    if (s.real() < detail::reflection_threshold)
        return require_finite(detail::zeta_reflected(s), "zeta");
    return require_finite(detail::zeta_euler_maclaurin(s, false), "zeta");
}

/// zeta(s) - 1/(s-1), entire; equals Euler's constant at s = 1.
inline complex zeta_minus_pole(complex s) {
    detail::require_in_box(s, "zeta_minus_pole");
    if (s.real() < detail::reflection_threshold)
        return require_finite(detail::zeta_reflected(s) - 1.0 / (s - 1.0), "zeta_minus_pole");
    return require_finite(detail::zeta_euler_maclaurin(s, true), "zeta_minus_pole");
}

/// Pi(s/2 - 1) pi^{-s/2} zeta(s) = Gamma(s/2) pi^{-s/2} zeta(s), invariant
/// under s -> 1 - s. Rejected at its poles 0 and 1 and at the removable
/// points s = -2, -4, ... where Gamma(s/2) itself has poles.
inline complex completed_zeta(complex s) {
    detail::require_in_box(s, "completed_zeta");
    if (s == complex{0.0, 0.0} || s == complex{1.0, 0.0})
        throw pole_error("completed_zeta: pole at s = 0 or s = 1");
    const complex half = 0.5 * s;
    if (detail::is_nonpositive_integer(half))
        throw pole_error("completed_zeta: removable singularity at negative even s not handled");
    return require_finite(std::exp(log_gamma(half) - half * std::log(pi)) * zeta(s),
                          "completed_zeta");
}

/// |completed(s) - completed(1-s)| / (|completed(s)| + tiny).
inline double functional_equation_residual(complex s) {
    detail::require_in_box(1.0 - s, "functional_equation_residual");
    const complex a = completed_zeta(s);
    const complex b = completed_zeta(1.0 - s);
    return std::abs(a - b) / (std::abs(a) + 1e-300);
}

/// xi(t) = Pi(s/2) (s - 1) pi^{-s/2} zeta(s) with s = 1/2 + i t; even in t
/// and real for real t.
inline complex xi(complex t) {
    const complex s = complex{0.5, 0.0} + complex{0.0, 1.0} * t;
    detail::require_in_box(s, "xi");
    if (s == complex{1.0, 0.0} || s == complex{0.0, 0.0})
        return {0.5, 0.0};
    const complex half = 0.5 * s;
    const complex factor = std::exp(log_gamma(half) - half * std::log(pi));
    return require_finite(0.5 * s * (s - 1.0) * factor * zeta(s), "xi");
}

inline double xi(double t) { return xi(complex{t, 0.0}).real(); }

// ---------------------------------------------------------------------------
// Zeros on the critical line

/// Estimate (T/2pi) log(T/2pi) - T/2pi of the number of zeros of xi with
/// real part in (0, T].
inline double riemann_von_mangoldt(double T) {
    if (!(T > 2.0 * pi))
        throw domain_error("riemann_von_mangoldt: T must exceed 2 pi");
    const double u = T / (2.0 * pi);
    return u * std::log(u) - u;
}

struct ZeroBracket {
    double lo = 0.0;
    double hi = 0.0;
};

struct ZeroScanReport {
    double t_max = 0.0;
    double step = 0.0;
    std::vector<ZeroBracket> brackets;
    std::vector<double> refined_zeros;
    std::size_t count = 0;
    std::optional<double> rvm_estimate; // empty when t_max <= 2 pi
    /// Grid points where |xi| has a local minimum without a sign change,
    /// i.e. where a pair of zeros could share a grid cell.
    std::vector<double> suspicious;
    bool warning = false;
};

inline constexpr double zero_scan_max_t = 100.0;
inline constexpr double zero_scan_max_step = 0.05;

/// Brackets sign changes of xi on the grid 0, step, 2 step, ..., t_max and
/// refines each by bisection to width 1e-6.
inline ZeroScanReport zero_scan(double t_max, double step) {
    if (!(step > 0.0) || step > zero_scan_max_step)
        throw domain_error("zero_scan: step must lie in (0, 0.05]");
    if (!(t_max > 0.0) || t_max > zero_scan_max_t)
        throw domain_error("zero_scan: t_max must lie in (0, 100]");

    ZeroScanReport report;
    report.t_max = t_max;
    report.step = step;
    if (t_max > 2.0 * pi)
        report.rvm_estimate = riemann_von_mangoldt(t_max);

    const auto cells = static_cast<std::size_t>(std::ceil(t_max / step - 1e-9));
    std::vector<double> grid(cells + 1);
    std::vector<double> values(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
        grid[i] = std::min(t_max, static_cast<double>(i) * step);
        values[i] = xi(grid[i]);
    }

    for (std::size_t i = 0; i + 1 <= cells; ++i) {
        if ((values[i] < 0.0) != (values[i + 1] < 0.0))
            report.brackets.push_back({grid[i], grid[i + 1]});
    }
    for (std::size_t i = 1; i + 1 <= cells; ++i) {
        const double a = std::abs(values[i - 1]), b = std::abs(values[i]), c = std::abs(values[i + 1]);
        const bool same_sign = (values[i - 1] < 0.0) == (values[i] < 0.0) &&
                               (values[i] < 0.0) == (values[i + 1] < 0.0);
        if (same_sign && b < a && b < c)
            report.suspicious.push_back(grid[i]);
    }
    report.warning = !report.suspicious.empty();

    for (const auto& br : report.brackets) {
        double lo = br.lo, hi = br.hi;
        double f_lo = xi(lo);
        while (hi - lo > 1e-6) {
            const double mid = 0.5 * (lo + hi);
            const double f_mid = xi(mid);
            if ((f_mid < 0.0) == (f_lo < 0.0)) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        report.refined_zeros.push_back(0.5 * (lo + hi));
    }
    report.count = report.brackets.size();
    return report;
}

// ---------------------------------------------------------------------------
// Taylor constants about s = 0:
//   zeta(s) = 1/(s-1) + D - D_1 s + D_2 s^2/2! - D_3 s^3/3! + ...,  D = 1/2

struct DkEstimate {
    int k = 0;
    double value = 0.0;
    double error_estimate = 0.0;
    std::uint64_t n = 0;
    bool accelerated = false;
};

namespace detail {

// Value of the truncated sum-minus-integral at every cutoff requested, in a
// single ascending pass:
//   (log 2)^k + ... + (log(n-1))^k + (log n)^k / 2 - int_1^n (log x)^k dx
// optionally minus the Euler-Maclaurin tail sum_j B_2j/(2j)! f^{(2j-1)}(n)
// of f(x) = (log x)^k.
inline std::vector<long double> dk_partial(int k, std::vector<std::uint64_t> cutoffs, bool accelerate) {
    auto powk = [k](long double x) {
        long double r = 1.0L;
        for (int i = 0; i < k; ++i)
            r *= x;
        return r;
    };
    auto integral = [k](long double n) {
        // int_1^n (log x)^k dx = n sum_j (-1)^{k-j} k!/j! L^j - (-1)^k k!
        const long double L = std::log(n);
        long double poly = 0.0L;
        long double coeff = 1.0L; // k!/j!
        for (int j = k; j >= 0; --j) {
            poly += ((k - j) % 2 == 0 ? 1.0L : -1.0L) * coeff * std::pow(L, static_cast<long double>(j));
            if (j > 0)
                coeff *= j;
        }
        return n * poly - (k % 2 == 0 ? 1.0L : -1.0L) * coeff;
    };
    auto tail = [k](long double n) {
        // f^{(m)}(x) = x^{-m} P_m(log x); P_{m+1} = P_m' - m P_m
        std::vector<long double> poly(static_cast<std::size_t>(k) + 1, 0.0L);
        poly[static_cast<std::size_t>(k)] = 1.0L;
        const long double L = std::log(n);
        long double total = 0.0L;
        long double factorial = 1.0L;
        for (int m = 0; m < 2 * static_cast<int>(bernoulli_even.size()) - 1; ++m) {
            std::vector<long double> next(poly.size(), 0.0L);
            for (std::size_t i = 1; i < poly.size(); ++i)
                next[i - 1] += static_cast<long double>(i) * poly[i];
            for (std::size_t i = 0; i < poly.size(); ++i)
                next[i] -= static_cast<long double>(m) * poly[i];
            poly = std::move(next);
            const int order = m + 1;
            factorial *= order;
            if (order % 2 == 1) {
                long double value = 0.0L, lp = 1.0L;
                for (auto c : poly) {
                    value += c * lp;
                    lp *= L;
                }
                const long double bern = bernoulli_even[static_cast<std::size_t>(order / 2)];
                // B_{2j} / (2j)! with 2j = order + 1
                total += bern / (factorial * (order + 1)) * value / std::pow(n, static_cast<long double>(order));
            }
            if (order >= 7)
                break;
        }
        return total;
    };

    std::sort(cutoffs.begin(), cutoffs.end());
    std::vector<long double> out;
    out.reserve(cutoffs.size());
    compensated_sum<long double> sum; // sum over m = 2 .. current-1
    std::uint64_t m = 2;
    for (const auto n : cutoffs) {
        for (; m < n; ++m)
            sum += powk(std::log(static_cast<long double>(m)));
        const long double ln = static_cast<long double>(n);
        long double value = sum.value() + 0.5L * powk(std::log(ln)) - integral(ln);
        if (accelerate)
            value -= tail(ln);
        out.push_back(value);
    }
    return out;
}

} // namespace detail

inline constexpr int dk_max_k = 8;
inline constexpr std::uint64_t dk_min_n = 1000;

/// D_k as the truncated sum-minus-integral at cutoff n. With `accelerate`
/// the Euler-Maclaurin tail in f'(n), f'''(n), ... is removed and the error
/// estimate is the change between cutoffs n and 2n; otherwise the error
/// estimate is the size of the leading omitted term B_2/2 f'(n).
inline DkEstimate dk_constant(int k, std::uint64_t n, bool accelerate) {
    if (k == 0)
        throw domain_error("dk_constant: k = 0 is the constant D = 1/2, not given by the sum formula");
    if (k < 1 || k > dk_max_k)
        throw domain_error("dk_constant: k must lie in [1, 8]");
    if (n < dk_min_n)
        throw domain_error("dk_constant: n must be at least 1000");

    DkEstimate out;
    out.k = k;
    out.n = n;
    out.accelerated = accelerate;
    if (accelerate) {
        const auto v = detail::dk_partial(k, {n, 2 * n}, true);
        out.value = static_cast<double>(v[0]);
        out.error_estimate = static_cast<double>(std::abs(v[1] - v[0]));
    } else {
        const auto v = detail::dk_partial(k, {n}, false);
        out.value = static_cast<double>(v[0]);
        const double L = std::log(static_cast<double>(n));
        out.error_estimate = std::abs(k * std::pow(L, k - 1) / (12.0 * static_cast<double>(n)));
    }
    return out;
}

/// D_k = (-1)^k (zeta^{(k)}(0) + k!), from the trapezoidal rule for the
/// Cauchy integral of zeta(s) - 1/(s-1) on the circle |s| = 1/2.
inline double dk_cross_check(int k) {
    if (k < 0 || k > dk_max_k)
        throw domain_error("dk_cross_check: k must lie in [0, 8]");
    const double radius = 0.5;
    auto coefficient = [k, radius](int points) {
        compensated_complex_sum acc;
        for (int j = 0; j < points; ++j) {
            const double phi = 2.0 * pi * j / points;
            const complex w = std::polar(1.0, phi);
            acc += zeta_minus_pole(radius * w) * std::polar(1.0, -k * phi);
        }
        return acc.value().real() / points / std::pow(radius, k);
    };
    const double coarse = coefficient(48);
    const double fine = coefficient(64);
    if (std::abs(fine - coarse) > 1e-9)
        throw computation_error("dk_cross_check: contour quadrature did not settle");
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i)
        factorial *= i;
    return (k % 2 == 0 ? 1.0 : -1.0) * factorial * fine;
}

/// Euler's constant and D, D_1, ..., D_K with the cutoff used.
struct ConstantSet {
    double euler_C = 0.0;
    double D0 = 0.5;
    std::vector<DkEstimate> Dk; // Dk[i] holds D_{i+1}
    std::uint64_t n = 0;
    bool accelerated = false;

    double d(int k) const { return k == 0 ? D0 : Dk.at(static_cast<std::size_t>(k - 1)).value; }
};

inline ConstantSet compute_constants(int K, std::uint64_t n, bool accelerate) {
    if (K < 0 || K > dk_max_k)
        throw domain_error("compute_constants: K must lie in [0, 8]");
    ConstantSet out;
    out.euler_C = euler_gamma();
    out.n = n;
    out.accelerated = accelerate;
    for (int k = 1; k <= K; ++k)
        out.Dk.push_back(dk_constant(k, n, accelerate));
    return out;
}

/// 1/(s-1) + sum_{k<=K} (-1)^k D_k s^k / k!, for |s| <= 1/2.
inline complex laurent_eval_near_zero(complex s, int K, const ConstantSet& constants) {
    if (!(std::abs(s) <= 0.5))
        throw domain_error("laurent_eval_near_zero: |s| must not exceed 1/2");
    if (K < 0 || K > dk_max_k || static_cast<std::size_t>(K) > constants.Dk.size())
        throw domain_error("laurent_eval_near_zero: K exceeds the available constants");
    complex sum{0.0, 0.0};
    complex power{1.0, 0.0};
    double factorial = 1.0;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) {
            power *= s;
            factorial *= k;
        }
        sum += (k % 2 == 0 ? 1.0 : -1.0) * constants.d(k) * power / factorial;
    }
    return 1.0 / (s - 1.0) + sum;
}

} // namespace stieltjes
