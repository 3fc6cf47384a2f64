#pragma once

/// @file asymptotics.hpp
/// Prime-counting asymptotics over sieve tables: the psi decomposition of
/// the summatory g, theta/psi error ratios, the divisor-sum ratio, li(x),
/// Riemann's weighted prime count G(x), Mertens' constant, prime windows,
/// and an explorer for the alternating M(n/j) identity.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "stieltjes/arith_tables.hpp"
#include "stieltjes/error.hpp"
#include "stieltjes/numeric.hpp"
#include "stieltjes/scan_report.hpp"

namespace stieltjes {

struct AsymptoticRow {
    double x = 0.0;
    double value = 0.0;
    double s = 0.0;
};

namespace detail {

inline void require_exponent(double s, const char* what) {
    if (!(s > 0.0) || s > 1.0)
        throw domain_error(std::string(what) + ": s must lie in (0, 1]");
}

} // namespace detail

// ---------------------------------------------------------------------------
// g(1) + ... + g(n) = 2C + theta(n) + theta(n^{1/2}) + ...

struct PsiDecomposition {
    double lhs = 0.0;
    double rhs = 0.0;
    double diff = 0.0;
};

inline PsiDecomposition psi_decomposition_check(const ArithTable& table, std::uint64_t n) {
    table.check_index(n, "psi_decomposition_check");
    PsiDecomposition out;
    out.lhs = table.g_prefix()[n];
    out.rhs = 2.0 * euler_gamma() + chebyshev_psi(table, n);
    out.diff = out.lhs - out.rhs;
    return out;
}

/// A_n = (theta(n) + theta(n^{1/2}) + ... - n) / n^s.
inline double a_n_statistic(const ArithTable& table, std::uint64_t n, double s) {
    detail::require_exponent(s, "a_n_statistic");
    table.check_index(n, "a_n_statistic");
    const double x = static_cast<double>(n);
    return (chebyshev_psi(table, n) - x) / std::pow(x, s);
}

/// B_n = (theta(n) - n) / n^s.
inline double b_n_statistic(const ArithTable& table, std::uint64_t n, double s) {
    detail::require_exponent(s, "b_n_statistic");
    table.check_index(n, "b_n_statistic");
    const double x = static_cast<double>(n);
    return (chebyshev_theta(table, x) - x) / std::pow(x, s);
}

// ---------------------------------------------------------------------------
// Divisor problem

/// (d(1) + ... + d(n) - n log n - (2C - 1) n) / sqrt(n).
inline double divisor_asymptotic_ratio(const ArithTable& table, std::uint64_t n) {
    table.check_index(n, "divisor_asymptotic_ratio");
    const auto d = table.divisor_counts();
    std::uint64_t total = 0;
    for (std::uint64_t m = 1; m <= n; ++m)
        total += d[m];
    const double x = static_cast<double>(n);
    const double C = euler_gamma();
    return (static_cast<double>(total) - x * std::log(x) - (2.0 * C - 1.0) * x) / std::sqrt(x);
}

/// The divisor ratio at every `every`-th n in [from, to], from one running sum.
inline ScanReport divisor_ratio_scan(const ArithTable& table, std::uint64_t from, std::uint64_t to,
                                     std::uint64_t every) {
    if (every == 0)
        throw domain_error("divisor_ratio_scan: every must be positive");
    table.check_index(from, "divisor_ratio_scan");
    table.check_index(to, "divisor_ratio_scan");
    const auto d = table.divisor_counts();
    const double C = euler_gamma();
    ScanReport report;
    report.label = "divisor ratio";
    std::uint64_t total = 0;
    for (std::uint64_t m = 1; m <= to; ++m) {
        total += d[m];
        if (m >= from && (m - from) % every == 0) {
            const double x = static_cast<double>(m);
            report.add_row(x, (static_cast<double>(total) - x * std::log(x) - (2.0 * C - 1.0) * x) /
                                  std::sqrt(x));
        }
    }
    report.finish(static_cast<double>(from));
    return report;
}

// ---------------------------------------------------------------------------
// Logarithmic integral and Riemann's G

/// Principal-value li(x) for x > 1, from the series
/// li(x) = C + log log x + sum_{k>=1} (log x)^k / (k k!), summed in
/// extended precision. All terms are positive for x > 1.
inline double li(double x) {
    if (!(x > 1.0) || !std::isfinite(x))
        throw domain_error("li: x must exceed 1");
    const long double L = std::log(static_cast<long double>(x));
    long double term = 1.0L; // L^k / k!
    long double series = 0.0L;
    for (int k = 1; k < 10000; ++k) {
        term *= L / k;
        const long double add = term / k;
        series += add;
        if (add < series * 1e-21L)
            break;
    }
    const long double C = 0.577215664901532860606512090082402431L;
    return static_cast<double>(C + std::log(L) + series);
}

/// G(x) = pi(x) + pi(x^{1/2})/2 + pi(x^{1/3})/3 + ..., terms with x^{1/k} >= 2.
inline double riemann_G(const ArithTable& table, double x) {
    table.check_real(x, "riemann_G");
    const auto whole = static_cast<std::uint64_t>(std::floor(x));
    compensated_sum<double> acc;
    for (unsigned k = 1;; ++k) {
        const auto r = integer_root(whole, k);
        if (r < 2)
            break;
        acc += static_cast<double>(table.prime_count(static_cast<double>(r))) / k;
    }
    return acc.value();
}

/// (G(x) - li(x)) / x^s.
inline double relation_A(const ArithTable& table, double x, double s) {
    detail::require_exponent(s, "relation_A");
    if (!(x > 1.0))
        throw domain_error("relation_A: x must exceed 1");
    return (riemann_G(table, x) - li(x)) / std::pow(x, s);
}

// ---------------------------------------------------------------------------
// Mertens' constant and prime windows

/// sum_{p <= n} 1/p - log log n.
inline double mertens_constant_estimate(const ArithTable& table, std::uint64_t n) {
    if (n < 10)
        throw domain_error("mertens_constant_estimate: n must be at least 10");
    table.check_index(n, "mertens_constant_estimate");
    compensated_sum<double> acc;
    for (auto p : table.primes()) {
        if (p > n)
            break;
        acc += 1.0 / p;
    }
    return acc.value() - std::log(std::log(static_cast<double>(n)));
}

/// Number of primes in the half-open window (n, (1+h) n].
inline std::uint64_t prime_window_count(const ArithTable& table, std::uint64_t n, double h) {
    if (!(h > 0.0))
        throw domain_error("prime_window_count: h must be positive");
    const double upper = (1.0 + h) * static_cast<double>(n);
    if (upper > static_cast<double>(table.limit()))
        throw domain_error("prime_window_count: (1+h) n exceeds the table limit");
    return table.prime_count(std::floor(upper)) - table.prime_count(static_cast<double>(n));
}

// ---------------------------------------------------------------------------
// M(n) - M(n/2) + ... +- M(n/k) = -1 + h(k) M(k) - h(n) f(1) - ... - h(n/k) f(k)

enum class SignConvention { all_minus, alternating, as_printed, all_plus };
inline constexpr std::array<SignConvention, 4> sign_conventions = {
    SignConvention::all_minus, SignConvention::alternating, SignConvention::as_printed,
    SignConvention::all_plus};

/// Which parity of floor(x) makes h(x) = 1.
enum class ParityReading { one_when_even, one_when_odd };
inline constexpr std::array<ParityReading, 2> parity_readings = {ParityReading::one_when_even,
                                                                 ParityReading::one_when_odd};

inline const char* to_string(SignConvention c) {
    switch (c) {
    case SignConvention::all_minus: return "all_minus";
    case SignConvention::alternating: return "alternating";
    case SignConvention::as_printed: return "as_printed";
    case SignConvention::all_plus: return "all_plus";
    }
    return "";
}

inline const char* to_string(ParityReading r) {
    return r == ParityReading::one_when_even ? "h1_on_even" : "h1_on_odd";
}

struct IdentityReport {
    std::uint64_t n = 0;
    std::uint64_t k = 0; // floor(sqrt(n))
    /// Left side per sign convention, indexed like sign_conventions.
    std::array<std::int64_t, 4> lhs{};
    /// Right side as printed per parity reading, indexed like parity_readings.
    std::array<std::int64_t, 2> rhs{};
    /// matches[c][r]: lhs under convention c equals rhs under reading r.
    std::array<std::array<bool, 2>, 4> matches{};
    /// |lhs| < 2k + 1, and |lhs| < k + 1 when k is even, per convention.
    std::array<bool, 4> within_bound{};
};

namespace detail {

inline int sign_for(SignConvention c, std::uint64_t j) {
    if (j == 1)
        return 1;
    switch (c) {
    case SignConvention::all_minus: return -1;
    case SignConvention::alternating: return j % 2 == 0 ? -1 : 1;
    case SignConvention::as_printed: return j == 2 ? -1 : 1;
    case SignConvention::all_plus: return 1;
    }
    return 1;
}

inline int h_of(ParityReading r, std::uint64_t floor_x) {
    const bool even = floor_x % 2 == 0;
    return (r == ParityReading::one_when_even) == even ? 1 : 0;
}

} // namespace detail

/// Evaluates every sign convention and both parity readings with g(n/j)
/// read as M(floor(n/j)) and k = floor(sqrt(n)).
inline IdentityReport letter_identity_explorer(const MertensPrefix& prefix, const ArithTable& table,
                                               std::uint64_t n) {
    if (n < 1 || n > prefix.limit || n > table.limit())
        throw domain_error("letter_identity_explorer: n outside the tables");
    IdentityReport out;
    out.n = n;
    out.k = isqrt(n);
    const auto k = out.k;
    const auto& M = prefix.values;
    const auto mu = table.mu();

    for (std::size_t c = 0; c < sign_conventions.size(); ++c) {
        std::int64_t sum = 0;
        for (std::uint64_t j = 1; j <= k; ++j)
            sum += detail::sign_for(sign_conventions[c], j) * M[n / j];
        out.lhs[c] = sum;
        const auto bound = static_cast<std::int64_t>(k % 2 == 0 ? k + 1 : 2 * k + 1);
        out.within_bound[c] = std::abs(sum) < bound;
    }
    for (std::size_t r = 0; r < parity_readings.size(); ++r) {
        std::int64_t value = -1 + detail::h_of(parity_readings[r], k) * M[k];
        for (std::uint64_t i = 1; i <= k; ++i)
            value -= detail::h_of(parity_readings[r], n / i) * mu[i];
        out.rhs[r] = value;
    }
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t r = 0; r < 2; ++r)
            out.matches[c][r] = out.lhs[c] == out.rhs[r];
    return out;
}

struct IdentitySweep {
    std::uint64_t from = 0;
    std::uint64_t to = 0;
    std::array<std::array<std::uint64_t, 2>, 4> match_count{};
    std::array<std::uint64_t, 4> bound_count{};

    double match_rate(std::size_t c, std::size_t r) const {
        return static_cast<double>(match_count[c][r]) / static_cast<double>(to - from + 1);
    }
};

inline IdentitySweep identity_sweep(const MertensPrefix& prefix, const ArithTable& table,
                                    std::uint64_t from, std::uint64_t to) {
    if (from < 1 || from > to)
        throw domain_error("identity_sweep: empty range");
    IdentitySweep out;
    out.from = from;
    out.to = to;
    for (std::uint64_t n = from; n <= to; ++n) {
        const auto rep = letter_identity_explorer(prefix, table, n);
        for (std::size_t c = 0; c < 4; ++c) {
            for (std::size_t r = 0; r < 2; ++r)
                out.match_count[c][r] += rep.matches[c][r];
            out.bound_count[c] += rep.within_bound[c];
        }
    }
    return out;
}

} // namespace stieltjes
