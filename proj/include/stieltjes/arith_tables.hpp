#pragma once

/// @file arith_tables.hpp
/// Sieve-backed arithmetic tables: primes, the Moebius function, Mertens
/// prefix sums, divisor counts, prime logarithms and squarefree counts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "stieltjes/error.hpp"
#include "stieltjes/numeric.hpp"

namespace stieltjes {

/// Largest sieve limit accepted by build_tables. The resident cost is one
/// byte per n for mu plus four bytes per prime; divisor counts and smallest
/// prime factors add four bytes per n each when requested.
inline constexpr std::uint64_t max_table_limit = 1'000'000'000;

namespace detail {

inline std::vector<std::uint32_t> simple_primes(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    if (n < 2)
        return out;
    std::vector<char> composite(n + 1, 0);
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (composite[p])
            continue;
        out.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t m = p * p; m <= n; m += p)
            composite[m] = 1;
    }
    return out;
}

struct table_data {
    std::uint64_t limit = 0;
    std::vector<std::int8_t> mu;         // index n, mu[0] unused
    std::vector<std::uint32_t> primes;   // ascending

    std::once_flag spf_once;
    std::vector<std::uint32_t> spf;
    std::once_flag divisors_once;
    std::vector<std::uint32_t> divisors;
    std::once_flag theta_once;
    std::vector<double> theta_prefix;    // theta_prefix[i] = sum of log p over primes[0..i]
    std::once_flag g_once;
    std::vector<double> g_prefix;        // g_prefix[n] = g(1) + ... + g(n)
};

// Sieves [lo, hi) with the primes up to sqrt(limit). Writes mu for the
// segment and returns the primes found in it, ascending.
inline std::vector<std::uint32_t> sieve_segment(std::uint64_t lo, std::uint64_t hi,
                                                std::span<const std::uint32_t> small,
                                                std::int8_t* mu) {
    const std::size_t len = hi - lo;
    std::vector<std::uint32_t> prod(len, 1);
    std::fill(mu + lo, mu + hi, std::int8_t{1});
    for (const std::uint64_t p : small) {
        std::uint64_t m = std::max(p, (lo + p - 1) / p * p);
        for (; m < hi; m += p) {
            mu[m] = static_cast<std::int8_t>(-mu[m]);
            prod[m - lo] *= static_cast<std::uint32_t>(p);
        }
        const std::uint64_t pp = p * p;
        for (m = std::max(pp, (lo + pp - 1) / pp * pp); m < hi; m += pp)
            mu[m] = 0;
    }
    std::vector<std::uint32_t> found;
    for (auto p : small)
        if (p >= lo && p < hi)
            found.push_back(p);
    for (std::uint64_t n = lo; n < hi; ++n) {
        const auto q = prod[n - lo];
        // At most one prime factor exceeds sqrt(limit).
        if (mu[n] != 0 && q != n)
            mu[n] = static_cast<std::int8_t>(-mu[n]);
        if (q == 1 && n >= 2)
            found.push_back(static_cast<std::uint32_t>(n));
    }
    return found;
}

} // namespace detail

/// Immutable sieve tables up to a limit N. Copies share storage; lazily
/// derived columns (divisor counts, smallest prime factors, prefix sums)
/// are built once on first use and are safe to request concurrently.
class ArithTable {
public:
    ArithTable() = default;

    std::uint64_t limit() const { return data_->limit; }

    /// mu[n] for n in 1..N; index 0 is a placeholder.
    std::span<const std::int8_t> mu() const { return data_->mu; }
    int mobius(std::uint64_t n) const {
        check_index(n, "mobius");
        return data_->mu[n];
    }

    std::span<const std::uint32_t> primes() const { return data_->primes; }

    /// pi(x): number of primes <= x, for 0 <= x <= N.
    std::uint64_t prime_count(double x) const {
        check_real(x, "prime_count");
        const auto& p = data_->primes;
        return static_cast<std::uint64_t>(
            std::upper_bound(p.begin(), p.end(), static_cast<std::uint64_t>(std::floor(x)),
                             [](std::uint64_t v, std::uint32_t q) { return v < q; }) -
            p.begin());
    }

    /// spf[n] for n in 2..N (entries 0 and 1 are zero).
    std::span<const std::uint32_t> smallest_prime_factors() const {
        std::call_once(data_->spf_once, [d = data_.get()] { build_spf(*d); });
        return data_->spf;
    }

    /// d(n) for n in 1..N (entry 0 is zero).
    std::span<const std::uint32_t> divisor_counts() const {
        auto spf = smallest_prime_factors();
        std::call_once(data_->divisors_once, [d = data_.get(), spf] { build_divisors(*d, spf); });
        return data_->divisors;
    }

    /// Running sums of log p over the primes in ascending order.
    std::span<const double> theta_prefix() const {
        std::call_once(data_->theta_once, [d = data_.get()] {
            d->theta_prefix.reserve(d->primes.size());
            compensated_sum<double> acc;
            for (auto p : d->primes) {
                acc += std::log(static_cast<double>(p));
                d->theta_prefix.push_back(acc.value());
            }
        });
        return data_->theta_prefix;
    }

    /// Running sums g(1) + ... + g(n) of the prime-power logarithm weight
    /// with g(1) = 2C.
    std::span<const double> g_prefix() const {
        auto spf = smallest_prime_factors();
        std::call_once(data_->g_once, [d = data_.get(), spf] {
            d->g_prefix.assign(d->limit + 1, 0.0);
            compensated_sum<double> acc;
            for (std::uint64_t n = 1; n <= d->limit; ++n) {
                acc += prime_power_log(n, spf, euler_gamma());
                d->g_prefix[n] = acc.value();
            }
        });
        return data_->g_prefix;
    }

    /// g(1) = 2C, g(p^k) = log p, g(n) = 0 otherwise.
    static double prime_power_log(std::uint64_t n, std::span<const std::uint32_t> spf, double C) {
        if (n == 1)
            return 2.0 * C;
        const std::uint64_t p = spf[n];
        std::uint64_t m = n;
        while (m % p == 0)
            m /= p;
        return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }

    void check_index(std::uint64_t n, const char* what) const {
        if (n < 1 || n > data_->limit)
            throw domain_error(std::string(what) + ": index " + std::to_string(n) +
                               " outside 1.." + std::to_string(data_->limit));
    }

    void check_real(double x, const char* what) const {
        if (!(x >= 0.0) || x > static_cast<double>(data_->limit))
            throw domain_error(std::string(what) + ": argument outside [0, " +
                               std::to_string(data_->limit) + "]");
    }

private:
    friend ArithTable build_tables(std::uint64_t, unsigned);
    friend ArithTable table_from_mu(std::vector<std::int8_t>);

    explicit ArithTable(std::shared_ptr<detail::table_data> d) : data_(std::move(d)) {}

    static void build_spf(detail::table_data& d) {
        d.spf.assign(d.limit + 1, 0);
        const auto root = isqrt(d.limit);
        for (auto p : d.primes) {
            if (p > root)
                break;
            for (std::uint64_t m = static_cast<std::uint64_t>(p) * p; m <= d.limit; m += p)
                if (d.spf[m] == 0)
                    d.spf[m] = p;
        }
        for (std::uint64_t n = 2; n <= d.limit; ++n)
            if (d.spf[n] == 0)
                d.spf[n] = static_cast<std::uint32_t>(n);
    }

    static void build_divisors(detail::table_data& d, std::span<const std::uint32_t> spf) {
        d.divisors.assign(d.limit + 1, 0);
        if (d.limit >= 1)
            d.divisors[1] = 1;
        for (std::uint64_t n = 2; n <= d.limit; ++n) {
            const std::uint64_t p = spf[n];
            std::uint64_t rest = n / p;
            std::uint32_t e = 1;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            d.divisors[n] = d.divisors[rest] * (e + 1);
        }
    }

    std::shared_ptr<detail::table_data> data_ = std::make_shared<detail::table_data>();
};

/// Segmented Eratosthenes sieve up to `limit`. Segments are independent,
/// so the result is identical for any thread count (0 = hardware default).
inline ArithTable build_tables(std::uint64_t limit, unsigned threads = 0) {
    if (limit == 0)
        throw domain_error("build_tables: limit must be at least 1");
    if (limit > max_table_limit)
        throw domain_error("build_tables: limit " + std::to_string(limit) +
                           " exceeds the supported maximum " + std::to_string(max_table_limit));

    auto d = std::make_shared<detail::table_data>();
    d->limit = limit;
    d->mu.assign(limit + 1, 0);
    const auto small = detail::simple_primes(static_cast<std::uint32_t>(isqrt(limit)));

    constexpr std::uint64_t segment = 1u << 18;
    const std::uint64_t segments = (limit + segment) / segment; // covers [0, limit]
    std::vector<std::vector<std::uint32_t>> found(segments);
    auto run = [&](std::uint64_t first, std::uint64_t stride) {
        for (std::uint64_t s = first; s < segments; s += stride) {
            const auto lo = std::max<std::uint64_t>(1, s * segment);
            const auto hi = std::min(limit + 1, (s + 1) * segment);
            found[s] = detail::sieve_segment(lo, hi, small, d->mu.data());
        }
    };

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, segments));
    if (threads <= 1) {
        run(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back(run, w, threads);
    }

    std::size_t total = 0;
    for (const auto& f : found)
        total += f.size();
    d->primes.reserve(total);
    for (const auto& f : found)
        d->primes.insert(d->primes.end(), f.begin(), f.end());
    d->mu[0] = 0;
    return ArithTable(std::move(d));
}

/// Rebuilds a table around an externally supplied mu column (index 0 unused),
/// re-deriving the prime list by sieving.
inline ArithTable table_from_mu(std::vector<std::int8_t> mu) {
    if (mu.size() < 2)
        throw domain_error("table_from_mu: empty mu column");
    auto d = std::make_shared<detail::table_data>();
    d->limit = mu.size() - 1;
    d->mu = std::move(mu);
    d->mu[0] = 0;
    d->primes = detail::simple_primes(static_cast<std::uint32_t>(d->limit));
    return ArithTable(std::move(d));
}

// ---------------------------------------------------------------------------
// Mertens function

struct MertensPrefix {
    std::uint64_t limit = 0;
    std::vector<std::int32_t> values; // values[n] = M(n), values[0] = 0
    double observed_min_ratio = 0.0;
    double observed_max_ratio = 0.0;
    std::uint64_t argmin = 1;
    std::uint64_t argmax = 1;

    std::int32_t operator()(std::uint64_t n) const { return values.at(n); }
};

inline MertensPrefix mertens_prefix(const ArithTable& table) {
    MertensPrefix out;
    out.limit = table.limit();
    out.values.assign(out.limit + 1, 0);
    const auto mu = table.mu();
    std::int32_t m = 0;
    out.observed_min_ratio = std::numeric_limits<double>::infinity();
    out.observed_max_ratio = -std::numeric_limits<double>::infinity();
    for (std::uint64_t n = 1; n <= out.limit; ++n) {
        m += mu[n];
        out.values[n] = m;
        const double r = m / std::sqrt(static_cast<double>(n));
        if (r < out.observed_min_ratio) {
            out.observed_min_ratio = r;
            out.argmin = n;
        }
        if (r > out.observed_max_ratio) {
            out.observed_max_ratio = r;
            out.argmax = n;
        }
    }
    return out;
}

/// Sup of |M(n)|/sqrt(n) over lo <= n <= hi, with the index attaining it.
struct RatioSup {
    double value = 0.0;
    std::uint64_t at = 0;
};

inline RatioSup mertens_abs_ratio_sup(const MertensPrefix& prefix, std::uint64_t lo,
                                      std::uint64_t hi) {
    if (lo < 1 || hi > prefix.limit || lo > hi)
        throw domain_error("mertens_abs_ratio_sup: range outside table");
    RatioSup best;
    for (std::uint64_t n = lo; n <= hi; ++n) {
        const double r = std::abs(prefix.values[n]) / std::sqrt(static_cast<double>(n));
        if (r > best.value) {
            best.value = r;
            best.at = n;
        }
    }
    return best;
}

/// Checks the exact identity sum_{k=1..n} M(floor(n/k)) = 1.
inline bool mertens_identity_check(const MertensPrefix& prefix, std::uint64_t n) {
    if (n < 1 || n > prefix.limit)
        throw domain_error("mertens_identity_check: n outside 1.." + std::to_string(prefix.limit));
    std::int64_t sum = 0;
    for (std::uint64_t k = 1; k <= n; ++k)
        sum += prefix.values[n / k];
    return sum == 1;
}

// ---------------------------------------------------------------------------
// Other arithmetic functions

inline std::span<const std::uint32_t> divisor_counts(const ArithTable& table) {
    return table.divisor_counts();
}

/// Chebyshev theta(x) = sum of log p over primes p <= x, ascending order.
inline double chebyshev_theta(const ArithTable& table, double x) {
    table.check_real(x, "chebyshev_theta");
    const auto count = table.prime_count(x);
    return count == 0 ? 0.0 : table.theta_prefix()[count - 1];
}

/// psi(n) = theta(n) + theta(n^{1/2}) + ... with exact integer roots.
inline double chebyshev_psi(const ArithTable& table, std::uint64_t n) {
    table.check_real(static_cast<double>(n), "chebyshev_psi");
    compensated_sum<double> acc;
    for (unsigned k = 1;; ++k) {
        const auto r = integer_root(n, k);
        if (r < 2)
            break;
        acc += chebyshev_theta(table, static_cast<double>(r));
    }
    return acc.value();
}

inline double stieltjes_g(const ArithTable& table, std::uint64_t n, double C) {
    table.check_index(n, "stieltjes_g");
    return ArithTable::prime_power_log(n, table.smallest_prime_factors(), C);
}

inline std::uint64_t squarefree_count(const ArithTable& table, std::uint64_t n) {
    table.check_index(n, "squarefree_count");
    const auto mu = table.mu();
    return static_cast<std::uint64_t>(
        std::count_if(mu.begin() + 1, mu.begin() + static_cast<std::ptrdiff_t>(n) + 1,
                      [](std::int8_t v) { return v != 0; }));
}

struct CauchyBound {
    double lhs = 0.0; // |a_1 + ... + a_n|
    double rhs = 0.0; // sqrt(n) * sqrt(a_1^2 + ... + a_n^2)
    bool holds = false;
};

/// |sum a_i| <= sqrt(n * sum a_i^2). `holds` allows for the few ulps of
/// rounding that separate the two sides in the equality case.
inline CauchyBound cauchy_mean_inequality(std::span<const double> values) {
    if (values.empty())
        throw domain_error("cauchy_mean_inequality: empty sequence");
    compensated_sum<double> sum, squares;
    for (double a : values) {
        sum += a;
        squares += a * a;
    }
    CauchyBound out;
    out.lhs = std::abs(sum.value());
    out.rhs = std::sqrt(static_cast<double>(values.size())) * std::sqrt(squares.value());
    out.holds = out.lhs <= out.rhs * (1.0 + 8.0 * std::numeric_limits<double>::epsilon());
    return out;
}

} // namespace stieltjes
