/*
   Copyright 2026 The rectfree authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <rectfree/series.hpp>

#include "oracles.hpp"

namespace rectfree {
namespace {

using Series = PowerSeries<double>;
constexpr double tol = 1e-9;

void expect_coeffs(const Series& s, const std::vector<double>& expected, double eps = tol) {
    ASSERT_EQ(s.order() + 1, expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(s[i], expected[i], eps) << "coefficient z^" << i;
}

Series random_series(std::mt19937_64& rng, std::size_t order, bool invertible) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Series s(order);
    for (std::size_t i = 0; i <= order; ++i) s[i] = u(rng);
    if (invertible) {
        s[0] = 0.0;
        s[1] = 0.5 + std::abs(s[1]);
    }
    return s;
}

TEST(SeriesArithmetic, AddSubtract) {
    expect_coeffs(Series(2, {1, 1}) + Series(2, {1, -1}), {2, 0, 0});
    const Series f(3, {0.5, -2, 3, 1});
    EXPECT_EQ(f + Series(3), f);
    expect_coeffs(Series(2, {0, 1}) + Series(2, {0, 0, 1}), {0, 1, 1});
    expect_coeffs(f - f, {0, 0, 0, 0});
}

TEST(SeriesArithmetic, MultiplyTruncates) {
    expect_coeffs(Series(2, {1, 1}) * Series(2, {1, -1}), {1, 0, -1});
    const Series f(3, {0.5, -2, 3, 1});
    EXPECT_EQ(f * Series::constant(1.0, 3), f);
    expect_coeffs(Series(1, {0, 1}) * Series(1, {0, 1}), {0, 0});
}

TEST(SeriesArithmetic, OrderMismatchThrows) {
    EXPECT_THROW(Series(2) + Series(3), std::invalid_argument);
    EXPECT_THROW(Series(2) * Series(3), std::invalid_argument);
    EXPECT_THROW(compose(Series(2), Series(3)), std::invalid_argument);
}

TEST(SeriesCompose, PolynomialSubstitution) {
    expect_coeffs(compose(Series(2, {0, 1, 1}), Series(2, {0, 2})), {0, 2, 4});
    const Series f(4, {1, -1, 2, 0.5, 3});
    EXPECT_EQ(compose(f, Series::identity(4)), f);
}

TEST(SeriesCompose, GeometricAgainstItsInverse) {
    // (z/(1-z)) ∘ (z/(1+z)) = z, both sides expanded independently.
    for (std::size_t n : {1u, 4u, 12u, 16u}) {
        std::vector<double> f(n + 1, 1.0), g(n + 1);
        f[0] = 0.0;
        for (std::size_t k = 0; k <= n; ++k) g[k] = k == 0 ? 0.0 : (k % 2 ? 1.0 : -1.0);
        const auto direct = oracle::poly_compose(f, g, n);
        const auto got = compose(Series(n, f), Series(n, g));
        for (std::size_t k = 0; k <= n; ++k) {
            EXPECT_NEAR(direct[k], k == 1 ? 1.0 : 0.0, tol);
            EXPECT_NEAR(got[k], direct[k], tol);
        }
    }
}

TEST(SeriesCompose, NonzeroConstantInnerThrows) {
    EXPECT_THROW(compose(Series(2, {0, 1}), Series(2, {1, 1})), numerical_error);
}

TEST(SeriesInvert, KnownInverses) {
    expect_coeffs(invert_composition(Series::identity(5)), {0, 1, 0, 0, 0, 0});
    expect_coeffs(invert_composition(Series(3, {0, 2})), {0, 0.5, 0, 0});

    // z/(1-z) -> z/(1+z); checked by direct truncated composition
    const std::size_t n = 10;
    std::vector<double> f(n + 1, 1.0);
    f[0] = 0.0;
    const auto g = invert_composition(Series(n, f));
    for (std::size_t k = 1; k <= n; ++k) EXPECT_NEAR(g[k], k % 2 ? 1.0 : -1.0, tol);
    const auto back = oracle::poly_compose(f, std::vector<double>(g.coeffs().begin(), g.coeffs().end()), n);
    for (std::size_t k = 0; k <= n; ++k) EXPECT_NEAR(back[k], k == 1 ? 1.0 : 0.0, tol);
}

TEST(SeriesInvert, RejectsDegenerateInput) {
    EXPECT_THROW(invert_composition(Series(3, {0, 0, 1})), numerical_error);
    EXPECT_THROW(invert_composition(Series(3, {1, 1})), numerical_error);
}

TEST(SeriesReciprocal, GeometricSeries) {
    expect_coeffs(reciprocal(Series(4, {1, -1})), {1, 1, 1, 1, 1});
    expect_coeffs(reciprocal(Series::constant(1.0, 2)), {1, 0, 0});
    expect_coeffs(reciprocal(Series(4, {1, 0.5})), {1, -0.5, 0.25, -0.125, 0.0625});
    EXPECT_THROW(reciprocal(Series(2, {0, 1})), numerical_error);
}

TEST(SeriesSqrt, PerfectSquareAndBinomial) {
    expect_coeffs(sqrt_series(Series(3, {1, 2, 1})), {1, 1, 0, 0});
    expect_coeffs(sqrt_series(Series::constant(4.0, 2)), {2, 0, 0});
    // sqrt(1 + 2z) = sum_k C(1/2, k) 2^k z^k
    expect_coeffs(sqrt_series(Series(8, {1, 2})), oracle::binomial_series(0.5, 2.0, 8));
    EXPECT_NEAR(sqrt_series(Series(3, {1, 2}))[2], -0.5, tol);
    EXPECT_NEAR(sqrt_series(Series(3, {1, 2}))[3], 0.5, tol);
    EXPECT_THROW(sqrt_series(Series(2, {0, 1})), numerical_error);
    EXPECT_THROW(sqrt_series(Series(2, {-1, 1})), numerical_error);
}

TEST(SeriesDivideByZ, IndexShift) {
    const Series f(3, {0, 2, 3, 4});
    expect_coeffs(f.divided_by_z(), {2, 3, 4});
    expect_coeffs(f.divided_by_z().times_z(), {0, 2, 3, 4});
    EXPECT_THROW(Series(2, {1, 1}).divided_by_z(), numerical_error);
}

// Property sweeps on random polynomials.

TEST(SeriesProperties, InverseIsTwoSided) {
    std::mt19937_64 rng(20260101);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 16;
        const auto f = random_series(rng, n, true);
        const auto g = invert_composition(f);
        const auto id = Series::identity(n);
        double scale = 1.0;
        for (double c : g.coeffs()) scale = std::max(scale, std::abs(c));
        expect_coeffs(compose(f, g), std::vector<double>(id.coeffs().begin(), id.coeffs().end()), 1e-12 * scale);
        expect_coeffs(compose(g, f), std::vector<double>(id.coeffs().begin(), id.coeffs().end()), 1e-12 * scale);
    }
}

TEST(SeriesProperties, ReciprocalAndSqrtAreExactAtTruncation) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 16;
        auto f = random_series(rng, n, false);
        f[0] = 0.5 + std::abs(f[0]);
        const auto one = f * reciprocal(f);
        const auto root = sqrt_series(f);
        const auto sq = root * root;
        EXPECT_GT(root[0], 0.0);
        for (std::size_t k = 0; k <= n; ++k) {
            EXPECT_NEAR(one[k], k == 0 ? 1.0 : 0.0, tol);
            EXPECT_NEAR(sq[k], f[k], tol);
        }
    }
}

TEST(SeriesProperties, CompositionIsAssociative) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + trial % 12;
        const auto f = random_series(rng, n, false);
        const auto g = random_series(rng, n, true);
        const auto h = random_series(rng, n, true);
        const auto left = compose(compose(f, g), h);
        const auto right = compose(f, compose(g, h));
        for (std::size_t k = 0; k <= n; ++k) EXPECT_NEAR(left[k], right[k], 1e-9);
    }
}

}  // namespace
}  // namespace rectfree
