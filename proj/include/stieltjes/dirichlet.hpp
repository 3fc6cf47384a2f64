#pragma once

/// @file dirichlet.hpp
/// Dirichlet series sum lambda(n)/n^s: partial sums, summation by parts
/// with explicit remainder, prefix-ratio scans, convolution and empirical
/// abscissa probes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stieltjes/arith_tables.hpp"
#include "stieltjes/error.hpp"
#include "stieltjes/numeric.hpp"
#include "stieltjes/scan_report.hpp"

namespace stieltjes {

enum class CoefficientSource { mobius, divisor_corrected, one_minus_g, unit, custom };

inline const char* to_string(CoefficientSource s) {
    switch (s) {
    case CoefficientSource::mobius: return "mobius";
    case CoefficientSource::divisor_corrected: return "divisor_corrected";
    case CoefficientSource::one_minus_g: return "one_minus_g";
    case CoefficientSource::unit: return "unit";
    case CoefficientSource::custom: return "custom";
    }
    return "custom";
}

/// lambda(1..N) with provenance. values[0] is unused.
struct CoefficientStream {
    std::string name;
    std::uint64_t limit = 0;
    std::vector<double> values;
    CoefficientSource source = CoefficientSource::custom;
    /// Abscissas known or claimed for the series, when there are any.
    std::optional<double> conditional_abscissa;
    std::optional<double> absolute_abscissa;

    double operator[](std::uint64_t n) const { return values[n]; }
};

inline CoefficientStream custom_stream(std::string name, std::vector<double> one_based) {
    if (one_based.size() < 2)
        throw domain_error("custom_stream: need at least lambda(1)");
    CoefficientStream out;
    out.name = std::move(name);
    out.limit = one_based.size() - 1;
    out.values = std::move(one_based);
    out.values[0] = 0.0;
    return out;
}

inline CoefficientStream unit_stream(std::uint64_t limit) {
    CoefficientStream out{"unit", limit, std::vector<double>(limit + 1, 1.0), CoefficientSource::unit, 1.0, 1.0};
    out.values[0] = 0.0;
    return out;
}

inline CoefficientStream mobius_stream(const ArithTable& table) {
    CoefficientStream out{"mobius", table.limit(), {}, CoefficientSource::mobius, 0.5, 1.0};
    out.values.assign(table.limit() + 1, 0.0);
    const auto mu = table.mu();
    for (std::uint64_t n = 1; n <= table.limit(); ++n)
        out.values[n] = mu[n];
    return out;
}

/// d(n) - log n - 2C.
inline CoefficientStream divisor_corrected_stream(const ArithTable& table, double C) {
    CoefficientStream out{"divisor_corrected", table.limit(), {}, CoefficientSource::divisor_corrected,
                          0.5, 1.0};
    out.values.assign(table.limit() + 1, 0.0);
    const auto d = table.divisor_counts();
    for (std::uint64_t n = 1; n <= table.limit(); ++n)
        out.values[n] = static_cast<double>(d[n]) - std::log(static_cast<double>(n)) - 2.0 * C;
    return out;
}

/// 1 - g(n) with g(1) = 2C, g(p^k) = log p, g = 0 elsewhere.
inline CoefficientStream one_minus_g_stream(const ArithTable& table, double C) {
    CoefficientStream out{"one_minus_g", table.limit(), {}, CoefficientSource::one_minus_g, 0.75, 1.0};
    out.values.assign(table.limit() + 1, 0.0);
    const auto spf = table.smallest_prime_factors();
    for (std::uint64_t n = 1; n <= table.limit(); ++n)
        out.values[n] = 1.0 - ArithTable::prime_power_log(n, spf, C);
    return out;
}

/// sum_{n <= upto} lambda(n) n^{-s}, ascending.
inline complex partial_sum(const CoefficientStream& coeffs, complex s, std::uint64_t upto) {
    if (upto > coeffs.limit)
        throw domain_error("partial_sum: upto " + std::to_string(upto) + " exceeds stream limit " +
                           std::to_string(coeffs.limit));
    compensated_complex_sum acc;
    for (std::uint64_t n = 1; n <= upto; ++n)
        if (coeffs.values[n] != 0.0)
            acc += coeffs.values[n] * inverse_power(static_cast<double>(n), s);
    return require_finite(acc.value(), "partial_sum");
}

// ---------------------------------------------------------------------------
// Summation by parts

/// The unique theta in (0, 1) with n^{-s} - (n+1)^{-s} = s / (n + theta)^{s+1}.
inline double mean_value_theta(std::uint64_t n, double s) {
    if (n < 1)
        throw domain_error("mean_value_theta: n must be at least 1");
    if (!(s > 0.0) || !std::isfinite(s))
        throw domain_error("mean_value_theta: s must be positive");
    const double x = static_cast<double>(n);
    // u = 1 - (1 + 1/n)^{-s} = n^s (n^{-s} - (n+1)^{-s})
    const double u = -std::expm1(-s * std::log1p(1.0 / x));
    // (n + theta)/n = (s / (n u))^{1/(s+1)}
    const double log_ratio = (std::log(s) - std::log(x * u)) / (s + 1.0);
    const double theta = x * std::expm1(log_ratio);
    if (!(theta > 0.0 && theta < 1.0))
        throw computation_error("mean_value_theta: root not bracketed in (0, 1)");
    return theta;
}

struct AbelDecomposition {
    complex s;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    /// f(n)/n^s + ... + f(n+m)/(n+m)^s by direct summation.
    complex direct_sum;
    /// g(n+m)/(n+m)^s, added.
    complex upper_boundary;
    /// g(n-1)/n^s, subtracted.
    complex lower_boundary;
    /// sum_{j=n}^{n+m-1} g(j) (j^{-s} - (j+1)^{-s}).
    complex remainder_R;
    /// theta_j in (0, 1) for j = n .. n+m-1, taken at the real part of s.
    std::vector<double> thetas;
    /// For real s: sum s g(j) / (j + theta_j)^{s+1}, which equals R.
    std::optional<double> remainder_theta_form;

    complex rearranged() const { return upper_boundary - lower_boundary + remainder_R; }
};

/// Rewrites the block sum sum_{j=n}^{n+m} f(j)/j^s through f(j) = g(j) - g(j-1),
/// with f = mu and g = M the Mertens function.
inline AbelDecomposition abel_rearranged_sum(const MertensPrefix& prefix, complex s,
                                             std::uint64_t n, std::uint64_t m) {
    if (n < 2)
        throw domain_error("abel_rearranged_sum: n must be at least 2 (g(n-1) needs n-1 >= 1)");
    if (n + m > prefix.limit)
        throw domain_error("abel_rearranged_sum: n + m exceeds the Mertens table limit");
    if (!(s.real() > 0.0))
        throw domain_error("abel_rearranged_sum: Re(s) must be positive");

    AbelDecomposition out;
    out.s = s;
    out.n = n;
    out.m = m;
    const auto& g = prefix.values;

    compensated_complex_sum direct;
    for (std::uint64_t j = n; j <= n + m; ++j) {
        const int f = g[j] - g[j - 1];
        if (f != 0)
            direct += static_cast<double>(f) * inverse_power(static_cast<double>(j), s);
    }
    out.direct_sum = direct.value();

    out.upper_boundary = static_cast<double>(g[n + m]) * inverse_power(static_cast<double>(n + m), s);
    out.lower_boundary = static_cast<double>(g[n - 1]) * inverse_power(static_cast<double>(n), s);

    const bool real_s = s.imag() == 0.0;
    compensated_complex_sum remainder;
    compensated_sum<double> theta_form;
    out.thetas.reserve(m);
    for (std::uint64_t j = n; j < n + m; ++j) {
        const double x = static_cast<double>(j);
        if (g[j] != 0)
            remainder += static_cast<double>(g[j]) * forward_difference_inverse_power(x, s);
        const double theta = mean_value_theta(j, s.real());
        out.thetas.push_back(theta);
        if (real_s && g[j] != 0)
            theta_form += s.real() * g[j] * std::exp(-(s.real() + 1.0) * std::log(x + theta));
    }
    out.remainder_R = remainder.value();
    if (real_s)
        out.remainder_theta_form = theta_form.value();
    return out;
}

/// |s| sum_{j=n}^{n+m-1} |g(j)| / j^{Re(s)+1}, an upper bound for |R|.
inline double abel_remainder_bound(const MertensPrefix& prefix, complex s, std::uint64_t n,
                                   std::uint64_t m) {
    if (n < 1 || n + m > prefix.limit)
        throw domain_error("abel_remainder_bound: range outside the Mertens table");
    compensated_sum<double> acc;
    for (std::uint64_t j = n; j < n + m; ++j)
        acc += std::abs(prefix.values[j]) * std::pow(static_cast<double>(j), -(s.real() + 1.0));
    return std::abs(s) * acc.value();
}

// ---------------------------------------------------------------------------
// Prefix-ratio scans

/// n = floor(1.25^k), deduplicated, up to and including `limit`.
inline std::vector<std::uint64_t> geometric_grid(std::uint64_t limit, double ratio = 1.25) {
    std::vector<std::uint64_t> grid;
    for (double x = 1.0; x <= static_cast<double>(limit); x *= ratio) {
        const auto n = static_cast<std::uint64_t>(std::floor(x));
        if (grid.empty() || grid.back() != n)
            grid.push_back(n);
    }
    if (grid.empty() || grid.back() != limit)
        grid.push_back(limit);
    return grid;
}

inline std::vector<double> prefix_sums(const CoefficientStream& coeffs, std::uint64_t upto) {
    std::vector<double> out(upto + 1, 0.0);
    compensated_sum<double> acc;
    for (std::uint64_t n = 1; n <= upto; ++n) {
        acc += coeffs.values[n];
        out[n] = acc.value();
    }
    return out;
}

/// r(n) = (lambda(1) + ... + lambda(n)) / n^s on the geometric grid up to N.
/// The tail is the last decade, n >= N/10.
inline ScanReport theorem1_ratio_scan(const CoefficientStream& coeffs, double s, std::uint64_t N) {
    if (!(s > 0.0))
        throw domain_error("theorem1_ratio_scan: s must be positive");
    if (N < 1 || N > coeffs.limit)
        throw domain_error("theorem1_ratio_scan: N outside the stream");
    const auto prefix = prefix_sums(coeffs, N);
    ScanReport report;
    report.label = coeffs.name + " prefix ratio";
    report.parameter = s;
    for (const auto n : geometric_grid(N)) {
        const double x = static_cast<double>(n);
        report.add_row(x, prefix[n] / std::pow(x, s));
    }
    report.finish(static_cast<double>(N) / 10.0);
    return report;
}

// ---------------------------------------------------------------------------
// Convolution

/// v(n) = sum_{d | n} a(d) b(n/d), accumulated in ascending d.
inline CoefficientStream dirichlet_convolution(const CoefficientStream& a, const CoefficientStream& b) {
    if (a.limit != b.limit)
        throw domain_error("dirichlet_convolution: mismatched limits " + std::to_string(a.limit) +
                           " and " + std::to_string(b.limit));
    const auto N = a.limit;
    CoefficientStream out;
    out.name = a.name + "*" + b.name;
    out.limit = N;
    out.values.assign(N + 1, 0.0);
    for (std::uint64_t d = 1; d <= N; ++d) {
        const double ad = a.values[d];
        if (ad == 0.0)
            continue;
        for (std::uint64_t e = 1, n = d; n <= N; ++e, n += d)
            out.values[n] += ad * b.values[e];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Abscissa probes

/// Abscissa parameters of the product theorem: conditional convergence at
/// alpha, absolute at alpha + beta, product probed at alpha + beta/2.
struct ConvergenceParams {
    double alpha = 0.0;
    double beta = 0.0;

    double product_probe() const { return alpha + 0.5 * beta; }
};

struct AbscissaEstimate {
    /// Growth exponent of the running maximum of |lambda(1) + ... + lambda(n)|.
    double conditional_estimate = 0.0;
    /// Growth exponent of |lambda(1)| + ... + |lambda(n)|.
    double absolute_estimate = 0.0;
    std::uint64_t fit_from = 0;
    std::uint64_t fit_to = 0;
    std::size_t samples = 0;
};

inline constexpr std::uint64_t abscissa_probe_min_n = 10'000;

namespace detail {

inline double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace detail

/// Slopes of log(envelope) against log n on the grid floor(1.25^k), fitted
/// over n >= 100. Empirical estimates only.
inline AbscissaEstimate abscissa_probe(const CoefficientStream& coeffs, std::uint64_t N) {
    if (N < abscissa_probe_min_n)
        throw domain_error("abscissa_probe: N must be at least 10000");
    if (N > coeffs.limit)
        throw domain_error("abscissa_probe: N exceeds the stream limit");
    if (std::all_of(coeffs.values.begin() + 1, coeffs.values.begin() + static_cast<std::ptrdiff_t>(N) + 1,
                    [](double v) { return v == 0.0; }))
        throw domain_error("abscissa_probe: degenerate all-zero stream");

    constexpr std::uint64_t fit_from = 100;
    std::vector<double> envelope(N + 1, 0.0), absolute(N + 1, 0.0);
    compensated_sum<double> running, running_abs;
    double peak = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        running += coeffs.values[n];
        running_abs += std::abs(coeffs.values[n]);
        peak = std::max(peak, std::abs(running.value()));
        envelope[n] = peak;
        absolute[n] = running_abs.value();
    }

    std::vector<double> lx, le, lx_abs, la;
    for (const auto n : geometric_grid(N)) {
        if (n < fit_from)
            continue;
        const double x = std::log(static_cast<double>(n));
        if (envelope[n] > 0.0) {
            lx.push_back(x);
            le.push_back(std::log(envelope[n]));
        }
        if (absolute[n] > 0.0) {
            lx_abs.push_back(x);
            la.push_back(std::log(absolute[n]));
        }
    }
    if (lx.size() < 3 || lx_abs.size() < 3)
        throw computation_error("abscissa_probe: too few nonzero samples to fit");

    AbscissaEstimate out;
    out.conditional_estimate = detail::least_squares_slope(lx, le);
    out.absolute_estimate = detail::least_squares_slope(lx_abs, la);
    out.fit_from = fit_from;
    out.fit_to = N;
    out.samples = lx.size();
    return out;
}

} // namespace stieltjes
