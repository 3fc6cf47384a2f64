#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "stieltjes/gamma.hpp"
#include "stieltjes/zeta.hpp"

using namespace stieltjes;

namespace {

double rel(complex a, complex b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST(GaussPi, FactorialValues) {
    EXPECT_NEAR(std::abs(gauss_pi(0.0) - 1.0), 0.0, 1e-14);
    EXPECT_LT(rel(gauss_pi(4.0), 24.0), 1e-13);
    EXPECT_LT(rel(gauss_pi(-0.5), std::sqrt(pi)), 1e-13);
    EXPECT_LT(rel(stieltjes::gamma(complex{0.5, 0.0}), std::sqrt(pi)), 1e-13);
}

TEST(GaussPi, MatchesRealGamma) {
    for (double x = -4.75; x < 30; x += 0.37)
        EXPECT_LT(rel(gauss_pi(x), std::tgamma(x + 1.0)), 1e-12) << x;
}

TEST(GaussPi, RecurrenceOnRandomPoints) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(-6, 8), im(-30, 30);
    for (int i = 0; i < 300; ++i) {
        const complex x{re(rng), im(rng)};
        EXPECT_LT(rel(gauss_pi(x), x * gauss_pi(x - 1.0)), 1e-11) << x;
    }
}

TEST(GaussPi, ReflectionIdentity) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    for (const complex z : {complex{0.3, 1.2}, complex{-2.4, 0.7}, complex{0.5, 10.0}})
        EXPECT_LT(rel(stieltjes::gamma(z) * stieltjes::gamma(1.0 - z), pi / std::sin(pi * z)), 1e-12);
}

TEST(GaussPi, Poles) {
    EXPECT_THROW(gauss_pi(-1.0), pole_error);
    EXPECT_THROW(gauss_pi(-3.0), pole_error);
    EXPECT_THROW(stieltjes::gamma(complex{0.0, 0.0}), pole_error);
}

TEST(Zeta, SpecialValues) {
    EXPECT_NEAR(zeta(2.0).real(), oracle::zeta2(), 1e-12);
    EXPECT_NEAR(zeta(2.0).real(), pi * pi / 6, 1e-12);
    EXPECT_NEAR(zeta(0.0).real(), -0.5, 1e-10);
    EXPECT_LT(std::abs(zeta(-2.0)), 1e-10);
    EXPECT_LT(std::abs(zeta(-4.0)), 1e-10);
    EXPECT_LT(std::abs(zeta(-8.0)), 1e-10);
    EXPECT_NEAR(zeta(-1.0).real(), -1.0 / 12.0, 1e-13);
    EXPECT_NEAR(zeta(4.0).real(), std::pow(pi, 4) / 90.0, 1e-14);
}

TEST(Zeta, KnownComplexValues) {
    // mpmath, 17 digits
    EXPECT_LT(rel(zeta({0.5, 10.0}), {1.5448952202967528, -0.11533646527127338}), 1e-12);
    EXPECT_LT(rel(zeta({2.0, 50.0}), {0.77395093315669076, 0.1259447158263342}), 1e-12);
    EXPECT_LT(rel(zeta({-3.5, 20.0}), {-37.456719829206896, -98.992307129261624}), 1e-10);
}

TEST(Zeta, ConjugateSymmetry) {
    for (const complex s : {complex{0.3, 7.0}, complex{-2.0, 30.0}, complex{5.0, 119.0}})
        EXPECT_LT(rel(zeta(std::conj(s)), std::conj(zeta(s))), 1e-13);
}

TEST(Zeta, EulerProductAtTwo) {
    // 1/zeta(2) = prod (1 - p^-2), primes below 10^4 leave a tail below 1e-5
    double prod = 1.0;
    for (int p = 2; p < 10000; ++p)
        if (oracle::is_prime(p))
            prod *= 1.0 - 1.0 / (static_cast<double>(p) * p);
    EXPECT_NEAR(1.0 / zeta(2.0).real(), prod, 2e-5);
}

TEST(Zeta, PoleAndBox) {
    EXPECT_THROW(zeta(1.0), pole_error);
    EXPECT_THROW(zeta({11.0, 0.0}), domain_error);
    EXPECT_THROW(zeta({0.5, 121.0}), domain_error);
    EXPECT_THROW(zeta({-10.5, 0.0}), domain_error);
}

TEST(ZetaMinusPole, Values) {
    EXPECT_NEAR(zeta_minus_pole(1.0).real(), oracle::euler_gamma(), 1e-13);
    EXPECT_NEAR(zeta_minus_pole(0.0).real(), 0.5, 1e-13);
    EXPECT_NEAR(zeta_minus_pole(2.0).real(), oracle::zeta2() - 1.0, 1e-12);
}

TEST(ZetaMinusPole, BoundedNearOne) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double r = 1e-3 * (1 + i % 10);
        const complex s = 1.0 + std::polar(r, 2 * pi * i / 100.0);
        const complex v = zeta_minus_pole(s);
        worst = std::max(worst, std::abs(v));
        EXPECT_NEAR(std::abs(v - oracle::euler_gamma()), 0.0, 1e-1);
    }
    EXPECT_LT(worst, 1.0);
}

TEST(FunctionalEquation, Grid) {
    for (double sigma : {-2.0, -0.5, 0.3, 0.5, 0.8, 2.0})
        for (double t : {0.5, 3.0, 7.0, 15.0, 30.0})
            EXPECT_LE(functional_equation_residual({sigma, t}), 1e-8) << sigma << "+" << t << "i";
}

TEST(FunctionalEquation, Examples) {
    EXPECT_LE(functional_equation_residual({0.5, 3.0}), 1e-8);
    EXPECT_LE(functional_equation_residual(2.0), 1e-8);
    EXPECT_LE(functional_equation_residual({0.3, 7.0}), 1e-8);
    EXPECT_THROW(completed_zeta(0.0), pole_error);
    EXPECT_THROW(completed_zeta(1.0), pole_error);
}

TEST(Xi, RealAndEven) {
    for (double t = 0.0; t <= 60.0; t += 0.5) {
        const complex a = xi(complex{t, 0.0});
        const complex b = xi(complex{-t, 0.0});
        EXPECT_LE(std::abs(a.imag()), 1e-10 * std::abs(a)) << t;
        EXPECT_LE(std::abs(a - b), 1e-10 * std::abs(a)) << t;
    }
    EXPECT_NEAR(xi(5.0), xi(-5.0), 1e-10 * std::abs(xi(5.0)));
}

TEST(Xi, ValueAtZeroAndFirstSignChange) {
    // xi(0) = -zeta(1/2) Gamma(1/4) pi^{-1/4} / 8
    const double expected = -(-1.4603545088095868) * std::tgamma(0.25) * std::pow(pi, -0.25) / 8.0;
    EXPECT_NEAR(xi(0.0), expected, 1e-13);
    EXPECT_NE(xi(14.0) > 0, xi(14.2) > 0);
}

TEST(ZeroScan, Counts) {
    EXPECT_EQ(zero_scan(10, 0.01).count, 0u);
    const auto r50 = zero_scan(50, 0.01);
    EXPECT_EQ(r50.count, 10u);
    EXPECT_FALSE(r50.warning);
    for (std::size_t i = 0; i < r50.count; ++i) {
        EXPECT_NEAR(r50.refined_zeros[i], oracle::first_zeros[i], 2e-6);
        EXPECT_GE(r50.refined_zeros[i], r50.brackets[i].lo);
        EXPECT_LE(r50.refined_zeros[i], r50.brackets[i].hi);
    }
    EXPECT_EQ(zero_scan(50, 0.005).count, 10u);
}

TEST(ZeroScan, Validation) {
    EXPECT_THROW(zero_scan(50, 0.1), domain_error);
    EXPECT_THROW(zero_scan(50, 0.0), domain_error);
    EXPECT_THROW(zero_scan(101, 0.01), domain_error);
}

TEST(RiemannVonMangoldt, Values) {
    EXPECT_NEAR(riemann_von_mangoldt(2 * pi * std::exp(1.0)), 0.0, 1e-14);
    const auto f = [](double T) { return T / (2 * pi) * std::log(T / (2 * pi)) - T / (2 * pi); };
    EXPECT_DOUBLE_EQ(riemann_von_mangoldt(50), f(50));
    EXPECT_NEAR(riemann_von_mangoldt(50), 8.55, 0.01);
    EXPECT_NEAR(riemann_von_mangoldt(100), 28.13, 0.01);
    EXPECT_THROW(riemann_von_mangoldt(2 * pi), domain_error);
}

TEST(DkConstant, FirstConstantAgainstStirling) {
    // log n! - 1/2 log n - (n log n - n + 1) -> 1/2 log(2 pi) - 1
    const double n = 1e6;
    const double stirling = std::lgamma(n + 1) - 0.5 * std::log(n) - (n * std::log(n) - n + 1);
    const double limit = 0.5 * std::log(2 * pi) - 1.0;
    const auto raw = dk_constant(1, 1000000, false);
    EXPECT_NEAR(raw.value, stirling, 1e-8);
    EXPECT_LE(std::abs(raw.value - limit), raw.error_estimate * 1.01);
    const auto acc = dk_constant(1, 1000000, true);
    EXPECT_NEAR(acc.value, limit, 1e-8);
    EXPECT_NEAR(acc.value, oracle::dk_reference[1], 1e-8);
}

TEST(DkConstant, AgainstReference) {
    for (int k = 1; k <= 5; ++k) {
        const auto e = dk_constant(k, 100000, true);
        EXPECT_NEAR(e.value, oracle::dk_reference[k], 1e-8) << k;
        EXPECT_GE(e.error_estimate, 0.0);
    }
}

TEST(DkConstant, Validation) {
    EXPECT_THROW(dk_constant(0, 1000, false), domain_error);
    EXPECT_THROW(dk_constant(9, 1000, false), domain_error);
    EXPECT_THROW(dk_constant(1, 999, false), domain_error);
}

TEST(DkCrossCheck, AgainstReference) {
    EXPECT_NEAR(dk_cross_check(0), 0.5, 1e-13);
    EXPECT_NEAR(dk_cross_check(1), 0.5 * std::log(2 * pi) - 1.0, 1e-12);
    for (int k = 0; k <= 8; ++k)
        EXPECT_NEAR(dk_cross_check(k), oracle::dk_reference[k], 1e-8) << k;
    EXPECT_THROW(dk_cross_check(-1), domain_error);
    EXPECT_THROW(dk_cross_check(9), domain_error);
}

TEST(DkCrossCheck, AgreesWithSumFormula) {
    for (int k = 1; k <= 5; ++k)
        EXPECT_NEAR(dk_constant(k, 100000, true).value, dk_cross_check(k), 1e-6) << k;
}

TEST(Laurent, NearZero) {
    const auto c = compute_constants(8, 100000, true);
    EXPECT_EQ(c.D0, 0.5);
    EXPECT_NEAR(laurent_eval_near_zero(0.0, 8, c).real(), -0.5, 1e-15);
    EXPECT_LT(std::abs(laurent_eval_near_zero(0.25, 8, c) - zeta(0.25)), 1e-8);
    EXPECT_LT(std::abs(laurent_eval_near_zero(-0.5, 8, c) - zeta(-0.5)), 1e-8);
    for (int i = 0; i < 24; ++i) {
        const complex s = std::polar(0.5, 2 * pi * i / 24.0);
        EXPECT_LT(std::abs(laurent_eval_near_zero(s, 8, c) - zeta(s)), 1e-8) << s;
    }
    EXPECT_THROW(laurent_eval_near_zero(0.6, 8, c), domain_error);
    EXPECT_THROW(laurent_eval_near_zero(0.1, 8, compute_constants(3, 1000, true)), domain_error);
}
