#include <gtest/gtest.h>

#include "stieltjes/weierstrass.hpp"

using namespace stieltjes;

TEST(Weierstrass, AtZeroIsExact) {
    for (const complex a : {complex{1.0, 0.0}, complex{0.5, 0.5}, complex{-2.0, 1.0}})
        for (auto sign : {ExponentSign::as_printed, ExponentSign::corrected}) {
            const auto e = exp_difference_product(0.0, a, 17, sign);
            EXPECT_EQ(e.product_value, 1.0 - std::exp(a));
        }
}

TEST(Weierstrass, VanishesAtA) {
    const auto e = exp_difference_product(1.0, 1.0, 1000, ExponentSign::corrected);
    EXPECT_EQ(std::abs(e.product_value), 0.0);
    EXPECT_EQ(std::abs(e.direct_value), 0.0);
    EXPECT_FALSE(e.relative_error.has_value());
}

TEST(Weierstrass, CorrectedSignConverges) {
    const auto e = exp_difference_product(0.3, 1.0, 100000, ExponentSign::corrected);
    ASSERT_TRUE(e.relative_error.has_value());
    EXPECT_LT(*e.relative_error, 1e-3);
    EXPECT_EQ(compare_exponent_signs(0.3, 1.0, 1000).closer, ExponentSign::corrected);
}

TEST(Weierstrass, ErrorShrinksWithDoubling) {
    for (const auto& [x, a] : {std::pair<complex, complex>{0.3, 1.0}, {{0.2, 0.4}, {-1.0, 0.3}}, {-0.7, 2.0}}) {
        double prev = 1e300;
        for (std::uint64_t N = 1000; N <= 64000; N *= 2) {
            const auto e = exp_difference_product(x, a, N, ExponentSign::corrected);
            EXPECT_LT(e.absolute_error, prev) << N;
            prev = e.absolute_error;
        }
    }
}

TEST(Weierstrass, SlopeAtZero) {
    const double h = 1e-5;
    const auto plus = exp_difference_product(h, 1.0, 100000, ExponentSign::corrected);
    const auto minus = exp_difference_product(-h, 1.0, 100000, ExponentSign::corrected);
    const double slope = (plus.product_value - minus.product_value).real() / (2 * h);
    EXPECT_NEAR(slope, 1.0, 1e-4);
}

TEST(Weierstrass, RealForRealArguments) {
    for (double x : {-1.5, 0.3, 2.0}) {
        const auto e = exp_difference_product(x, 0.7, 5000, ExponentSign::corrected);
        EXPECT_LE(std::abs(e.product_value.imag()), 1e-10 * std::abs(e.product_value));
    }
}

TEST(Weierstrass, Rejections) {
    EXPECT_THROW(exp_difference_product(0.3, complex(0.0, 2 * pi), 10, ExponentSign::corrected), domain_error);
    EXPECT_THROW(exp_difference_product(0.3, 0.0, 10, ExponentSign::corrected), domain_error);
    EXPECT_THROW(exp_difference_product(800.0, 1.0, 10, ExponentSign::corrected), domain_error);
    EXPECT_THROW(exp_difference_product(0.3, 1.0, 0, ExponentSign::corrected), domain_error);
}

TEST(ZeroSet, Periodicity) {
    EXPECT_TRUE(zero_set_check(1.0, 3));
    EXPECT_TRUE(zero_set_check({0.5, 0.5}, 5));
    EXPECT_THROW(zero_set_check(1.0, 0), domain_error);
}
