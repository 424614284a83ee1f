#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dirichlet/errors.hpp"
#include "dirichlet/taylor.hpp"
#include "oracles.hpp"

using namespace dirichlet;

namespace {

DirichletSeries geometric(int terms) {
    std::vector<Term> t;
    for (int j = 1; j <= terms; ++j) {
        t.push_back({std::pow(2.0, -j), static_cast<double>(j)});
    }
    return DirichletSeries(std::move(t));
}

// sum_j (1/j^2) e^{-j^2 pi^2 t}
DirichletSeries heatLike(int terms) {
    std::vector<Term> t;
    for (int j = 1; j <= terms; ++j) {
        t.push_back({1.0 / (j * j), j * j * std::numbers::pi * std::numbers::pi});
    }
    return DirichletSeries(std::move(t));
}

double measured(const DirichletSeries& s, const TaylorExpansion& e, std::size_t n, double t) {
    return static_cast<double>(abs(oracle::wideEvaluate(s, t) - oracle::widePartialSum(e, n, t)));
}

}  // namespace

TEST(Expand, SingleExponential) {
    const auto e = expand(DirichletSeries({{1, 1}}), 1.0, 3);
    const double c = std::exp(-1.0);
    ASSERT_EQ(e.order(), 3u);
    EXPECT_DOUBLE_EQ(e.coeffs[0], c);
    EXPECT_DOUBLE_EQ(e.coeffs[1], -c);
    EXPECT_DOUBLE_EQ(e.coeffs[2], c / 2);
    EXPECT_DOUBLE_EQ(e.coeffs[3], -c / 6);
}

TEST(Expand, ZerothCoefficientIsValue) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) {
        const auto s = oracle::randomSeries(rng, 15, 0.1, 30.0);
        EXPECT_EQ(expand(s, 1.0, 0).coeffs[0], evaluate(s, 1.0).value);
    }
}

TEST(Expand, Preconditions) {
    EXPECT_THROW(expand(DirichletSeries({{1, 1}}), 0.0, 3), ValidationError);
    EXPECT_THROW(expand(DirichletSeries({{1, 1}}), -1.0, 3), ValidationError);
    EXPECT_THROW(expand(DirichletSeries({{1, 0}}), 1.0, 3), ValidationError);
    EXPECT_THROW(expand(DirichletSeries({{1, -1}, {1, 1}}), 1.0, 3), ValidationError);
}

TEST(Expand, CoefficientsBoundedByAbsoluteSeries) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; ++i) {
        const auto s = oracle::randomSeries(rng, 30, 0.1, 100.0, 5.0);
        for (double tau : {0.3, 1.0, 3.0}) {
            const auto e = expand(s, tau, 40);
            for (std::size_t n = 0; n <= 40; ++n) {
                EXPECT_LE(std::abs(e.coeffs[n]), e.coeffBounds[n] * (1 + 1e-14));
                if (n >= 1) {
                    const double stirling =
                        e.sumAbsAlpha / (std::pow(tau, n) * std::sqrt(2 * std::numbers::pi * n));
                    EXPECT_LE(e.coeffBounds[n], stirling * (1 + 1e-12));
                }
            }
        }
    }
}

TEST(Expand, TailContributesToBounds) {
    DirichletSeries s({{1, 1}}, TailModel(0.5, 10.0));
    const auto withTail = expand(s, 1.0, 5);
    const auto without = expand(DirichletSeries({{1, 1}}), 1.0, 5);
    for (std::size_t n = 0; n <= 5; ++n) {
        EXPECT_GT(withTail.coeffBounds[n], without.coeffBounds[n]);
        // never above the generic sumBound (n/(e tau))^n / n! allowance
        const double generic =
            n == 0 ? 0.5 : 0.5 * std::exp(n * std::log(n / std::exp(1.0)) - std::lgamma(n + 1.0));
        EXPECT_LE(withTail.coeffBounds[n] - without.coeffBounds[n], generic * (1 + 1e-12));
    }
    EXPECT_EQ(withTail.sumAbsAlpha, 1.5);
}

TEST(Expand, LargeExponentsDoNotOverflow) {
    DirichletSeries s({{1.0, 2000.0}, {1.0, 1.0}});
    const auto e = expand(s, 1.0, 300);
    for (std::size_t n = 0; n <= 300; ++n) {
        EXPECT_TRUE(std::isfinite(e.coeffs[n]));
        EXPECT_LE(std::abs(e.coeffs[n]), e.coeffBounds[n] * (1 + 1e-14));
    }
    // the log-space path agrees with the closed form for a single large exponent
    const auto big = expand(DirichletSeries({{1.0, 800.0}}), 1.0, 900);
    const double expected = std::exp(-800.0 + 800 * std::log(800.0) - std::lgamma(801.0));
    EXPECT_NEAR(big.coeffs[800], expected, 1e-10 * expected);
}

TEST(Expand, CoefficientMatchesFiniteDifferenceDerivative) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 10; ++i) {
        const auto s = oracle::wellScaledSeries(rng, 10, 0.2, 5.0);
        const auto e = expand(s, 1.0, 2);
        const auto f = [&](double t) { return evaluate(s, t).value; };
        const double d1 = oracle::derivative(f, 1.0, 1e-4, 1);
        const double d2 = oracle::derivative(f, 1.0, 1e-4, 2) / 2.0;
        EXPECT_NEAR(e.coeffs[1], d1, 1e-5 * std::abs(d1));
        EXPECT_NEAR(e.coeffs[2], d2, 1e-5 * std::abs(d2));
    }
}

TEST(Remainder, ZeroAtCenter) {
    const auto e = expand(DirichletSeries({{1, 1}}), 1.0, 5);
    EXPECT_EQ(remainderBound(e, 3, 1.0).bound, 0.0);
}

TEST(Remainder, ExplicitFormula) {
    const auto e = expand(DirichletSeries({{1, 1}}), 1.0, 10);
    const auto cert = remainderBound(e, 10, 1.5);
    const double r = 0.5;
    EXPECT_DOUBLE_EQ(cert.bound, 1.0 / std::sqrt(2 * std::numbers::pi * 11) * std::pow(r, 11) / (1 - r));
    const double exact = std::abs(std::exp(-1.5) - partialSum(e, 10, 1.5));
    EXPECT_LE(exact, cert.bound);
}

TEST(Remainder, HeatLikeSeriesEnclosed) {
    const auto s = heatLike(20);
    const auto e = expand(s, 0.5, 15);
    for (std::size_t n : {5u, 10u, 15u}) {
        EXPECT_LE(measured(s, e, n, 0.6), remainderBound(e, n, 0.6).bound);
    }
}

TEST(Remainder, Preconditions) {
    const auto e = expand(DirichletSeries({{1, 1}}), 1.0, 5);
    EXPECT_THROW(remainderBound(e, 0, 1.2), ValidationError);
    EXPECT_THROW(remainderBound(e, 6, 1.2), ValidationError);
    EXPECT_THROW(remainderBound(e, 2, 0.0), ValidationError);
    EXPECT_THROW(remainderBound(e, 2, 2.0), ValidationError);
    EXPECT_THROW(remainderBound(e, 2, -0.5), ValidationError);
}

TEST(Remainder, CertifiedEnclosureOverGrid) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 8; ++i) {
        const auto s = oracle::randomSeries(rng, 20, 0.1, 60.0);
        for (double tau : {0.5, 2.0}) {
            const auto e = expand(s, tau, 25);
            for (int k = 1; k < 20; ++k) {
                const double t = 2 * tau * k / 20.0;
                for (std::size_t n = 1; n <= 25; ++n) {
                    EXPECT_LE(measured(s, e, n, t), remainderBound(e, n, t).bound + 1e-15);
                }
            }
        }
    }
}

TEST(EvaluateViaExpansion, KnownExponential) {
    const auto e = expand(DirichletSeries({{1, 1}}), 1.0, 20);
    const auto v = evaluateViaExpansion(e, 0.9);
    EXPECT_NEAR(v.value, std::exp(-0.9), 1e-12);
    EXPECT_LE(std::abs(v.value - std::exp(-0.9)), v.errorBound + 1e-16);
    EXPECT_EQ(evaluateViaExpansion(e, 1.0).value, e.coeffs[0]);
    EXPECT_THROW(evaluateViaExpansion(e, 2.0), ValidationError);
}

TEST(EvaluateViaExpansion, GeometricSeriesConverges) {
    const auto s = geometric(40);
    const auto e = expand(s, 0.8, 25);
    const double direct = evaluate(s, 0.5).value;
    const auto v = evaluateViaExpansion(e, 0.5);
    EXPECT_LT(std::abs(v.value - direct), 1e-8);
    EXPECT_LE(std::abs(v.value - direct), v.errorBound + 1e-15);
    // partial sums approach the value within each certificate
    for (std::size_t n = 1; n <= 25; ++n) {
        EXPECT_LE(std::abs(partialSum(e, n, 0.5) - direct), remainderBound(e, n, 0.5).bound + 1e-15);
    }
}

TEST(EvaluateViaExpansion, NearEdgeStillCertified) {
    const auto s = geometric(10);
    const auto e = expand(s, 1.0, 3);
    const auto v = evaluateViaExpansion(e, 1.999);
    EXPECT_LE(std::abs(v.value - evaluate(s, 1.999).value), v.errorBound);
}

TEST(ReExpansion, ConsistentAcrossCenters) {
    std::mt19937_64 rng(12);
    const auto s = oracle::randomSeries(rng, 12, 0.5, 20.0);
    const auto first = expand(s, 1.0, 40);
    const auto second = expand(s, 1.3, 40);
    for (double t : {0.8, 1.1, 1.4, 1.6}) {
        const auto a = evaluateViaExpansion(first, t);
        const auto b = evaluateViaExpansion(second, t);
        EXPECT_LE(std::abs(a.value - b.value), a.errorBound + b.errorBound + 1e-14);
    }
}

TEST(SelectOrder, SmallestCertifiedOrder) {
    const auto s = geometric(20);
    const auto n = selectOrder(s, 1.0, 1.4, 1e-10);
    ASSERT_TRUE(n.has_value());
    const auto e = expand(s, 1.0, *n);
    EXPECT_LE(remainderBound(e, *n, 1.4).bound, 1e-10);
    if (*n > 1) {
        EXPECT_GT(remainderBound(e, *n - 1, 1.4).bound, 1e-10);
    }
    EXPECT_FALSE(selectOrder(s, 1.0, 1.99, 1e-30, 20).has_value());
}
