#pragma once

// Command-line frontend. Every command validates its flags, runs one family
// of computations and writes a table as CSV or JSON.
//
// Exit status: 0 success, 1 computational error, 2 invalid invocation.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "stieltjes/stieltjes.hpp"

namespace stieltjes::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* cache_env_var = "STJZ_CACHE_DIR";
inline constexpr const char* cache_file_name = "mu.stjz";

/// An invocation rejected before any computation; maps to exit status 2.
class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Output tables

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
    explicit Table(std::string name) : command(std::move(name)) {}

    std::string command;
    json parameters = json::object();
    json summary = json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

inline std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", v);
}

inline std::string csv_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return format_double(v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::string>)
                return v;
            else
                return std::to_string(v);
        },
        c);
}

inline json json_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v))
                    return nullptr;
                return v;
            } else {
                return v;
            }
        },
        c);
}

inline void write_csv(const Table& t, std::ostream& out) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << csv_cell(row[i]);
        out << '\n';
    }
}

inline void write_json(const Table& t, std::ostream& out) {
    json doc = json::object();
    doc["command"] = t.command;
    doc["parameters"] = t.parameters;
    for (const auto& [key, value] : t.summary.items())
        doc[key] = value;
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            r[t.columns[i]] = json_cell(row[i]);
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Argument parsing helpers

inline double parse_real(const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw std::invalid_argument("not a finite real number: '" + text + "'");
    return v;
}

/// Parses "RE", "RE+IMi" or "RE-IMi".
inline complex parse_complex(const std::string& text) {
    static const std::regex grammar(
        R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?:([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i)?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, grammar))
        throw std::invalid_argument("expected RE, RE+IMi or RE-IMi, got '" + text + "'");
    const double re = parse_real(m[1].str());
    double im = 0.0;
    if (m[2].matched) {
        im = parse_real(m[3].str());
        if (m[2].str() == "-")
            im = -im;
    }
    return {re, im};
}

inline complex complex_flag(const std::string& flag, const std::string& text) {
    try {
        return parse_complex(text);
    } catch (const std::invalid_argument& e) {
        throw usage_error(flag + ": " + e.what());
    }
}

inline void require(bool ok, const std::string& message) {
    if (!ok)
        throw usage_error(message);
}

// ---------------------------------------------------------------------------
// Configuration

struct RunConfig {
    std::string command;
    std::string subcommand; // cache build / inspect
    std::string format = "csv";
    std::string output;
    std::string cache_dir;

    std::uint64_t limit = 0;
    std::uint64_t every = 1;
    std::uint64_t from = 1;
    std::uint64_t upto = 0;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t terms = 100000;
    std::uint64_t cutoff = 1000000; // --n for constants
    int k = 5;
    bool accelerate = false;
    std::string coeffs;
    std::string s_text;
    std::string t_text;
    std::string x_text;
    std::string a_text;
    double s_real = 0.75;
    double t_min = 0.0;
    double t_max = 0.0;
    double step = 0.01;
    double h = 0.1;
    double x = 0.0;
    std::string file;
};

// ---------------------------------------------------------------------------
// Tables with cache support

/// Returns a table of exactly `limit`, consulting <cache_dir>/mu.stjz. The
/// cache file is replaced by a fresh build whenever it is smaller than the
/// request, so it only grows.
inline ArithTable obtain_table(const RunConfig& cfg, std::uint64_t limit) {
    if (cfg.cache_dir.empty())
        return build_tables(limit);
    const std::filesystem::path dir(cfg.cache_dir);
    const auto path = dir / cache_file_name;
    if (std::filesystem::exists(path) && peek_cache_limit(path) >= limit) {
        auto cached = load_cache(path);
        if (cached.limit() == limit)
            return cached;
        const auto mu = cached.mu();
        return table_from_mu(std::vector<std::int8_t>(mu.begin(), mu.begin() + static_cast<std::ptrdiff_t>(limit) + 1));
    }
    auto table = build_tables(limit);
    std::filesystem::create_directories(dir);
    save_cache(table, path);
    return table;
}

inline CoefficientStream make_stream(const std::string& name, const ArithTable& table) {
    const double C = euler_gamma();
    if (name == "mobius")
        return mobius_stream(table);
    if (name == "unit")
        return unit_stream(table.limit());
    if (name == "divisor_corrected")
        return divisor_corrected_stream(table, C);
    if (name == "one_minus_g")
        return one_minus_g_stream(table, C);
    throw usage_error("--coeffs: unknown stream '" + name + "'");
}

inline std::vector<std::uint64_t> decades(std::uint64_t first, std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = first; v <= limit; v *= 10) {
        out.push_back(v);
        if (v > limit / 10)
            break;
    }
    if (out.empty() || out.back() != limit)
        out.push_back(limit);
    return out;
}

// ---------------------------------------------------------------------------
// Commands

inline Table cmd_mertens(const RunConfig& cfg) {
    Table t{"mertens"};
    t.parameters = {{"limit", cfg.limit}, {"every", cfg.every}};
    const auto table = obtain_table(cfg, cfg.limit);
    const auto prefix = mertens_prefix(table);
    t.summary = {{"M_limit", prefix(cfg.limit)},
                 {"min_ratio", prefix.observed_min_ratio},
                 {"argmin", prefix.argmin},
                 {"max_ratio", prefix.observed_max_ratio},
                 {"argmax", prefix.argmax}};
    t.columns = {"n", "M", "ratio"};
    for (std::uint64_t n = cfg.every; n <= cfg.limit; n += cfg.every) {
        const auto v = prefix(n);
        t.add({static_cast<std::int64_t>(n), static_cast<std::int64_t>(v),
               v / std::sqrt(static_cast<double>(n))});
    }
    return t;
}

inline Table cmd_dirichlet_sum(const RunConfig& cfg) {
    const complex s = complex_flag("--s", cfg.s_text);
    Table t{"dirichlet-sum"};
    t.parameters = {{"coeffs", cfg.coeffs}, {"s", cfg.s_text}, {"upto", cfg.upto}};
    const auto table = obtain_table(cfg, cfg.upto);
    const auto stream = make_stream(cfg.coeffs, table);
    t.columns = {"n", "re", "im"};
    compensated_complex_sum acc;
    const auto marks = decades(10, cfg.upto);
    std::size_t next = 0;
    for (std::uint64_t n = 1; n <= cfg.upto && next < marks.size(); ++n) {
        if (stream[n] != 0.0)
            acc += stream[n] * inverse_power(static_cast<double>(n), s);
        if (n == marks[next]) {
            const auto v = acc.value();
            t.add({static_cast<std::int64_t>(n), v.real(), v.imag()});
            ++next;
        }
    }
    return t;
}

inline Table cmd_ratio_scan(const RunConfig& cfg) {
    require(cfg.s_real > 0.0, "--s: exponent must be positive");
    Table t{"ratio-scan"};
    t.parameters = {{"coeffs", cfg.coeffs}, {"s", cfg.s_real}, {"limit", cfg.limit}};
    const auto table = obtain_table(cfg, cfg.limit);
    const auto report = theorem1_ratio_scan(make_stream(cfg.coeffs, table), cfg.s_real, cfg.limit);
    t.summary = {{"tail_from", report.tail_from}, {"tail_sup", report.tail_sup},
                 {"last_value", report.last_value()}, {"sign_changes", report.count}};
    t.columns = {"n", "ratio"};
    for (const auto& r : report.rows)
        t.add({static_cast<std::int64_t>(r.x), r.value});
    return t;
}

inline Table cmd_abscissa(const RunConfig& cfg) {
    Table t{"abscissa"};
    t.parameters = {{"coeffs", cfg.coeffs}, {"limit", cfg.limit}};
    const auto table = obtain_table(cfg, cfg.limit);
    const auto stream = make_stream(cfg.coeffs, table);
    const auto est = abscissa_probe(stream, cfg.limit);
    t.columns = {"coeffs", "conditional_estimate", "absolute_estimate", "claimed_conditional",
                 "fit_from", "fit_to", "samples"};
    t.add({cfg.coeffs, est.conditional_estimate, est.absolute_estimate,
           stream.conditional_abscissa.value_or(std::nan("")), static_cast<std::int64_t>(est.fit_from),
           static_cast<std::int64_t>(est.fit_to), static_cast<std::int64_t>(est.samples)});
    return t;
}

inline Table cmd_abel_check(const RunConfig& cfg) {
    const complex s = complex_flag("--s", cfg.s_text);
    require(s.real() > 0.0, "--s: real part must be positive");
    Table t{"abel-check"};
    t.parameters = {{"n", cfg.n}, {"m", cfg.m}, {"s", cfg.s_text}};
    const auto table = obtain_table(cfg, cfg.n + cfg.m);
    const auto prefix = mertens_prefix(table);
    const auto dec = abel_rearranged_sum(prefix, s, cfg.n, cfg.m);
    const auto rearranged = dec.rearranged();
    const double diff = std::abs(dec.direct_sum - rearranged);
    const double theta_min = dec.thetas.empty() ? std::nan("") : *std::min_element(dec.thetas.begin(), dec.thetas.end());
    const double theta_max = dec.thetas.empty() ? std::nan("") : *std::max_element(dec.thetas.begin(), dec.thetas.end());
    t.columns = {"direct_re", "direct_im", "rearranged_re", "rearranged_im", "abs_diff",
                 "R_re", "R_im", "R_bound", "theta_min", "theta_max"};
    t.add({dec.direct_sum.real(), dec.direct_sum.imag(), rearranged.real(), rearranged.imag(), diff,
           dec.remainder_R.real(), dec.remainder_R.imag(), abel_remainder_bound(prefix, s, cfg.n, cfg.m),
           theta_min, theta_max});
    return t;
}

inline Table cmd_convolution_check(const RunConfig& cfg) {
    Table t{"convolution-check"};
    t.parameters = {{"limit", cfg.limit}};
    const auto table = obtain_table(cfg, cfg.limit);
    const double C = euler_gamma();
    const auto mu = mobius_stream(table);
    auto max_diff = [](const CoefficientStream& a, auto&& expected) {
        double worst = 0.0;
        for (std::uint64_t n = 1; n <= a.limit; ++n)
            worst = std::max(worst, std::abs(a[n] - expected(n)));
        return worst;
    };
    const auto inv = dirichlet_convolution(mu, unit_stream(cfg.limit));
    const auto prod = dirichlet_convolution(mu, divisor_corrected_stream(table, C));
    const auto target = one_minus_g_stream(table, C);
    t.columns = {"identity", "max_abs_diff"};
    t.add({std::string("mobius*unit=delta"), max_diff(inv, [](std::uint64_t n) { return n == 1 ? 1.0 : 0.0; })});
    t.add({std::string("mobius*divisor_corrected=one_minus_g"),
           max_diff(prod, [&](std::uint64_t n) { return target[n]; })});
    return t;
}

inline Table cmd_zeta(const RunConfig& cfg) {
    const complex s = complex_flag("--s", cfg.s_text);
    require(ZetaBox::contains(s), "--s: outside the validated box Re in [-10, 10], |Im| <= 120");
    require(s != complex{1.0, 0.0}, "--s: zeta has a pole at s = 1");
    Table t{"zeta"};
    t.parameters = {{"s", cfg.s_text}};
    const auto z = zeta(s);
    const auto zp = zeta_minus_pole(s);
    t.columns = {"s_re", "s_im", "zeta_re", "zeta_im", "minus_pole_re", "minus_pole_im", "fe_residual"};
    double residual = std::nan("");
    if (ZetaBox::contains(1.0 - s) && s != complex{0.0, 0.0} &&
        !detail::is_nonpositive_integer(0.5 * s) && !detail::is_nonpositive_integer(0.5 * (1.0 - s)))
        residual = functional_equation_residual(s);
    t.add({s.real(), s.imag(), z.real(), z.imag(), zp.real(), zp.imag(), residual});
    return t;
}

inline Table cmd_xi(const RunConfig& cfg) {
    Table t{"xi"};
    t.columns = {"t_re", "t_im", "xi_re", "xi_im"};
    if (!cfg.t_text.empty()) {
        const complex tv = complex_flag("--t", cfg.t_text);
        require(ZetaBox::contains(complex{0.5, 0.0} + complex{0.0, 1.0} * tv),
                "--t: 1/2 + i t outside the validated box");
        t.parameters = {{"t", cfg.t_text}};
        const auto v = xi(tv);
        t.add({tv.real(), tv.imag(), v.real(), v.imag()});
        return t;
    }
    require(cfg.step > 0.0, "--step: must be positive");
    require(cfg.t_max >= cfg.t_min, "--t-max: must not be below --t-min");
    require(std::abs(cfg.t_min) <= ZetaBox::max_abs_im && std::abs(cfg.t_max) <= ZetaBox::max_abs_im,
            "--t-max: |t| must not exceed 120");
    t.parameters = {{"t_min", cfg.t_min}, {"t_max", cfg.t_max}, {"step", cfg.step}};
    const auto count = static_cast<std::uint64_t>(std::floor((cfg.t_max - cfg.t_min) / cfg.step + 1e-9));
    for (std::uint64_t i = 0; i <= count; ++i) {
        const double tv = cfg.t_min + static_cast<double>(i) * cfg.step;
        const auto v = xi(complex{tv, 0.0});
        t.add({tv, 0.0, v.real(), v.imag()});
    }
    return t;
}

inline Table cmd_zeros(const RunConfig& cfg) {
    Table t{"zeros"};
    t.parameters = {{"t_max", cfg.t_max}, {"step", cfg.step}};
    const auto report = zero_scan(cfg.t_max, cfg.step);
    t.summary = {{"count", report.count},
                 {"rvm_estimate", report.rvm_estimate ? json(*report.rvm_estimate) : json(nullptr)},
                 {"warning", report.warning},
                 {"suspicious", report.suspicious}};
    t.columns = {"index", "lo", "hi", "zero"};
    for (std::size_t i = 0; i < report.count; ++i)
        t.add({static_cast<std::int64_t>(i + 1), report.brackets[i].lo, report.brackets[i].hi,
               report.refined_zeros[i]});
    return t;
}

inline Table cmd_constants(const RunConfig& cfg) {
    Table t{"constants"};
    t.parameters = {{"k", cfg.k}, {"n", cfg.cutoff}, {"accelerate", cfg.accelerate}};
    const auto set = compute_constants(cfg.k, cfg.cutoff, cfg.accelerate);
    t.summary = {{"euler_C", set.euler_C}, {"D", set.D0}};
    t.columns = {"k", "D_k", "error_estimate", "contour", "difference"};
    for (const auto& d : set.Dk) {
        const double contour = dk_cross_check(d.k);
        t.add({static_cast<std::int64_t>(d.k), d.value, d.error_estimate, contour, d.value - contour});
    }
    return t;
}

inline Table cmd_theta(const RunConfig& cfg) {
    require(cfg.s_real > 0.0 && cfg.s_real <= 1.0, "--s: exponent must lie in (0, 1]");
    Table t{"theta"};
    t.parameters = {{"limit", cfg.limit}, {"s", cfg.s_real}};
    const auto table = obtain_table(cfg, cfg.limit);
    t.columns = {"n", "theta", "psi", "A_n", "B_n"};
    for (const auto n : decades(10, cfg.limit)) {
        const double x = static_cast<double>(n);
        t.add({static_cast<std::int64_t>(n), chebyshev_theta(table, x), chebyshev_psi(table, n),
               a_n_statistic(table, n, cfg.s_real), b_n_statistic(table, n, cfg.s_real)});
    }
    return t;
}

inline Table cmd_divisor_ratio(const RunConfig& cfg) {
    require(cfg.from <= cfg.limit, "--from: must not exceed --limit");
    Table t{"divisor-ratio"};
    t.parameters = {{"limit", cfg.limit}, {"from", cfg.from}, {"every", cfg.every}};
    const auto table = obtain_table(cfg, cfg.limit);
    const auto report = divisor_ratio_scan(table, cfg.from, cfg.limit, cfg.every);
    t.summary = {{"min_ratio", report.min_value}, {"max_ratio", report.max_value}};
    t.columns = {"n", "ratio"};
    for (const auto& r : report.rows)
        t.add({static_cast<std::int64_t>(r.x), r.value});
    return t;
}

inline Table cmd_li(const RunConfig& cfg) {
    require(cfg.x > 1.0, "--x: must exceed 1");
    Table t{"li"};
    t.parameters = {{"x", cfg.x}};
    t.columns = {"x", "li"};
    t.add({cfg.x, li(cfg.x)});
    return t;
}

inline Table cmd_relation_a(const RunConfig& cfg) {
    require(cfg.s_real > 0.0 && cfg.s_real <= 1.0, "--s: exponent must lie in (0, 1]");
    require(cfg.limit >= 10, "--limit: must be at least 10");
    Table t{"relation-a"};
    t.parameters = {{"limit", cfg.limit}, {"s", cfg.s_real}};
    const auto table = obtain_table(cfg, cfg.limit);
    t.columns = {"x", "G", "li", "A"};
    for (const auto n : decades(10, cfg.limit)) {
        const double x = static_cast<double>(n);
        t.add({static_cast<std::int64_t>(n), riemann_G(table, x), li(x), relation_A(table, x, cfg.s_real)});
    }
    return t;
}

inline Table cmd_mertens_constant(const RunConfig& cfg) {
    require(cfg.limit >= 10, "--limit: must be at least 10");
    Table t{"mertens-constant"};
    t.parameters = {{"limit", cfg.limit}};
    const auto table = obtain_table(cfg, cfg.limit);
    t.columns = {"n", "estimate"};
    for (const auto n : decades(10, cfg.limit))
        t.add({static_cast<std::int64_t>(n), mertens_constant_estimate(table, n)});
    return t;
}

inline Table cmd_prime_window(const RunConfig& cfg) {
    require(cfg.h > 0.0, "--h: must be positive");
    const double upper = std::floor((1.0 + cfg.h) * static_cast<double>(cfg.n));
    require(upper <= static_cast<double>(max_table_limit), "--h: (1+h) n exceeds the supported table limit");
    Table t{"prime-window"};
    t.parameters = {{"n", cfg.n}, {"h", cfg.h}};
    const auto table = obtain_table(cfg, std::max<std::uint64_t>(1, static_cast<std::uint64_t>(upper)));
    t.columns = {"n", "h", "count"};
    t.add({static_cast<std::int64_t>(cfg.n), cfg.h, static_cast<std::int64_t>(prime_window_count(table, cfg.n, cfg.h))});
    return t;
}

inline Table cmd_identity_explore(const RunConfig& cfg) {
    Table t{"identity-explore"};
    if (cfg.limit > 0) {
        t.parameters = {{"limit", cfg.limit}};
        const auto table = obtain_table(cfg, cfg.limit);
        const auto prefix = mertens_prefix(table);
        const auto sweep = identity_sweep(prefix, table, 1, cfg.limit);
        t.columns = {"convention", "reading", "match_rate", "bound_rate"};
        for (std::size_t c = 0; c < sign_conventions.size(); ++c)
            for (std::size_t r = 0; r < parity_readings.size(); ++r)
                t.add({std::string(to_string(sign_conventions[c])), std::string(to_string(parity_readings[r])),
                       sweep.match_rate(c, r),
                       static_cast<double>(sweep.bound_count[c]) / static_cast<double>(cfg.limit)});
        return t;
    }
    require(cfg.n >= 1, "--n: required (or --limit for a sweep)");
    t.parameters = {{"n", cfg.n}};
    const auto table = obtain_table(cfg, cfg.n);
    const auto prefix = mertens_prefix(table);
    const auto rep = letter_identity_explorer(prefix, table, cfg.n);
    t.summary = {{"k", rep.k}};
    t.columns = {"convention", "reading", "lhs", "rhs", "match", "within_bound"};
    for (std::size_t c = 0; c < sign_conventions.size(); ++c)
        for (std::size_t r = 0; r < parity_readings.size(); ++r)
            t.add({std::string(to_string(sign_conventions[c])), std::string(to_string(parity_readings[r])),
                   static_cast<std::int64_t>(rep.lhs[c]), static_cast<std::int64_t>(rep.rhs[r]),
                   static_cast<bool>(rep.matches[c][r]), static_cast<bool>(rep.within_bound[c])});
    return t;
}

inline Table cmd_weierstrass(const RunConfig& cfg) {
    const complex x = complex_flag("--x", cfg.x_text);
    const complex a = complex_flag("--a", cfg.a_text);
    require(std::abs(expm1(a)) >= 1e-12, "--a: must not be a multiple of 2 pi i");
    require(x.real() <= weierstrass_max_re && a.real() <= weierstrass_max_re, "--x: e^x would overflow");
    Table t{"weierstrass"};
    t.parameters = {{"x", cfg.x_text}, {"a", cfg.a_text}, {"terms", cfg.terms}};
    const auto cmp = compare_exponent_signs(x, a, cfg.terms);
    t.summary = {{"closer", to_string(cmp.closer)}};
    t.columns = {"sign", "product_re", "product_im", "direct_re", "direct_im", "abs_error", "rel_error"};
    for (const auto* e : {&cmp.as_printed, &cmp.corrected})
        t.add({std::string(to_string(e->exponent_sign)), e->product_value.real(), e->product_value.imag(),
               e->direct_value.real(), e->direct_value.imag(), e->absolute_error,
               e->relative_error.value_or(std::nan(""))});
    return t;
}

inline Table cmd_cache(const RunConfig& cfg) {
    Table t{"cache " + cfg.subcommand};
    if (cfg.subcommand == "build") {
        require(!cfg.cache_dir.empty(), "--dir: a cache directory is required");
        const std::filesystem::path dir(cfg.cache_dir);
        std::filesystem::create_directories(dir);
        const auto table = build_tables(cfg.limit);
        save_cache(table, dir / cache_file_name);
        t.parameters = {{"limit", cfg.limit}};
        t.columns = {"path", "limit", "bytes"};
        t.add({(dir / cache_file_name).string(), static_cast<std::int64_t>(cfg.limit),
               static_cast<std::int64_t>(cache_header_size + cfg.limit + 4)});
        return t;
    }
    std::filesystem::path path = cfg.file;
    if (path.empty()) {
        require(!cfg.cache_dir.empty(), "--dir: a cache directory or --file is required");
        path = std::filesystem::path(cfg.cache_dir) / cache_file_name;
    }
    const auto table = load_cache(path); // verifies magic, version and CRC
    const auto prefix = mertens_prefix(table);
    t.columns = {"path", "limit", "primes", "M_limit"};
    t.add({path.string(), static_cast<std::int64_t>(table.limit()),
           static_cast<std::int64_t>(table.primes().size()), static_cast<std::int64_t>(prefix(table.limit()))});
    return t;
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    if (const char* env = std::getenv(cache_env_var))
        cfg.cache_dir = env;

    CLI::App app{"Desk-scale experiments on zeta(s), the Moebius function and prime counting", "stieltjes"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", cfg.output, "Output file (default: standard output)");
    app.add_option("--cache-dir", cfg.cache_dir, std::string("Sieve cache directory (default: $") + cache_env_var + ")");

    const auto limit_range = CLI::Range(std::uint64_t{1}, max_table_limit);
    const std::vector<std::string> stream_names{"mobius", "unit", "divisor_corrected", "one_minus_g"};
    std::map<std::string, std::function<Table(const RunConfig&)>> handlers;

    auto add = [&](const std::string& name, const std::string& help, auto handler) {
        auto* sub = app.add_subcommand(name, help);
        handlers[name] = handler;
        return sub;
    };

    auto* mertens = add("mertens", "Mertens function M(n) and M(n)/sqrt(n)", cmd_mertens);
    mertens->add_option("--limit", cfg.limit)->required()->check(limit_range);
    mertens->add_option("--every", cfg.every)->check(CLI::PositiveNumber);

    auto* dsum = add("dirichlet-sum", "Partial sums of sum lambda(n)/n^s at decades", cmd_dirichlet_sum);
    dsum->add_option("--coeffs", cfg.coeffs)->required()->check(CLI::IsMember(stream_names));
    dsum->add_option("--s", cfg.s_text)->required();
    dsum->add_option("--upto", cfg.upto)->required()->check(limit_range);

    auto* rscan = add("ratio-scan", "(lambda(1)+...+lambda(n))/n^s on a geometric grid", cmd_ratio_scan);
    rscan->add_option("--coeffs", cfg.coeffs)->required()->check(CLI::IsMember(stream_names));
    rscan->add_option("--s", cfg.s_real)->required();
    rscan->add_option("--limit", cfg.limit)->required()->check(limit_range);

    auto* absc = add("abscissa", "Empirical growth exponents of prefix sums", cmd_abscissa);
    absc->add_option("--coeffs", cfg.coeffs)->required()->check(CLI::IsMember(stream_names));
    absc->add_option("--limit", cfg.limit)->required()->check(CLI::Range(abscissa_probe_min_n, max_table_limit));

    auto* abel = add("abel-check", "Summation by parts of a block of sum mu(n)/n^s", cmd_abel_check);
    abel->add_option("--n", cfg.n)->required()->check(CLI::Range(std::uint64_t{2}, max_table_limit));
    abel->add_option("--m", cfg.m)->required()->check(CLI::Range(std::uint64_t{0}, max_table_limit));
    abel->add_option("--s", cfg.s_text)->required();

    auto* conv = add("convolution-check", "Moebius convolution identities", cmd_convolution_check);
    conv->add_option("--limit", cfg.limit)->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{10'000'000}));

    auto* zeta_cmd = add("zeta", "zeta(s), zeta(s) - 1/(s-1) and the functional-equation residual", cmd_zeta);
    zeta_cmd->add_option("--s", cfg.s_text)->required();

    auto* xi_cmd = add("xi", "xi(t) at a point or on a grid", cmd_xi);
    auto* t_opt = xi_cmd->add_option("--t", cfg.t_text);
    xi_cmd->add_option("--t-min", cfg.t_min);
    auto* tmax_opt = xi_cmd->add_option("--t-max", cfg.t_max);
    xi_cmd->add_option("--step", cfg.step)->check(CLI::PositiveNumber);
    t_opt->excludes(tmax_opt);

    auto* zeros = add("zeros", "Sign changes of xi(t) on (0, t-max]", cmd_zeros);
    zeros->add_option("--t-max", cfg.t_max)->required()->check(CLI::Range(1e-9, zero_scan_max_t));
    zeros->add_option("--step", cfg.step)->check(CLI::Range(1e-9, zero_scan_max_step));

    auto* consts = add("constants", "D_1..D_k from the sum-minus-integral formula", cmd_constants);
    consts->add_option("--k", cfg.k)->required()->check(CLI::Range(1, dk_max_k));
    consts->add_option("--n", cfg.cutoff)->check(CLI::Range(dk_min_n, std::uint64_t{100'000'000}));
    consts->add_flag("--accelerate", cfg.accelerate);

    auto* theta = add("theta", "theta(n), psi(n), A_n and B_n at decades", cmd_theta);
    theta->add_option("--limit", cfg.limit)->required()->check(limit_range);
    theta->add_option("--s", cfg.s_real);

    auto* dratio = add("divisor-ratio", "(sum d(m) - n log n - (2C-1) n)/sqrt(n)", cmd_divisor_ratio);
    dratio->add_option("--limit", cfg.limit)->required()->check(limit_range);
    dratio->add_option("--every", cfg.every)->check(CLI::PositiveNumber);
    dratio->add_option("--from", cfg.from)->check(CLI::PositiveNumber);

    auto* li_cmd = add("li", "Principal-value logarithmic integral", cmd_li);
    li_cmd->add_option("--x", cfg.x)->required();

    auto* rela = add("relation-a", "(G(x) - li(x))/x^s at decades", cmd_relation_a);
    rela->add_option("--limit", cfg.limit)->required()->check(limit_range);
    rela->add_option("--s", cfg.s_real);

    auto* mconst = add("mertens-constant", "sum_{p<=n} 1/p - log log n at decades", cmd_mertens_constant);
    mconst->add_option("--limit", cfg.limit)->required()->check(limit_range);

    auto* window = add("prime-window", "Primes in (n, (1+h) n]", cmd_prime_window);
    window->set_help_flag("--help", "Print this help message and exit");
    window->add_option("--n", cfg.n)->required()->check(limit_range);
    window->add_option("--h", cfg.h)->required();

    auto* ident = add("identity-explore", "Sign conventions of the alternating M(n/j) identity", cmd_identity_explore);
    auto* ident_n = ident->add_option("--n", cfg.n)->check(limit_range);
    auto* ident_limit = ident->add_option("--limit", cfg.limit)->check(CLI::Range(std::uint64_t{1}, std::uint64_t{10'000'000}));
    ident_n->excludes(ident_limit);

    auto* weier = add("weierstrass", "Truncated product for e^x - e^a", cmd_weierstrass);
    weier->add_option("--x", cfg.x_text)->required();
    weier->add_option("--a", cfg.a_text)->required();
    weier->add_option("--terms", cfg.terms)->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100'000'000}));

    auto* cache = add("cache", "Build or inspect the sieve cache", cmd_cache);
    cache->require_subcommand(1);
    auto* build = cache->add_subcommand("build", "Sieve and write <dir>/mu.stjz");
    build->add_option("--limit", cfg.limit)->required()->check(limit_range);
    build->add_option("--dir", cfg.cache_dir);
    auto* inspect = cache->add_subcommand("inspect", "Verify and summarize a cache file");
    inspect->add_option("--dir", cfg.cache_dir);
    inspect->add_option("--file", cfg.file);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    for (auto* sub : app.get_subcommands())
        cfg.command = sub->get_name();
    if (cfg.command == "cache")
        cfg.subcommand = build->parsed() ? "build" : "inspect";

    try {
        const Table table = handlers.at(cfg.command)(cfg);
        std::ostringstream buffer;
        if (cfg.format == "json")
            write_json(table, buffer);
        else
            write_csv(table, buffer);
        if (cfg.output.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
            if (!file)
                throw computation_error("cannot open output file " + cfg.output);
            file << buffer.str();
        }
    } catch (const usage_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace stieltjes::cli
