#include "lolab/errors.hpp"
#include "lolab/vectors.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace lolab;
using namespace lolab::vectors;

namespace {

// Brute force: minimum over all supports of size s of the norm of the complement.
double brute_distance_to_sparse(const std::vector<double>& x, std::size_t s) {
    const std::size_t n = x.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != s) continue;
        double r = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            if (!(mask & (1U << k))) r += x[k] * x[k];
        best = std::min(best, std::sqrt(r));
    }
    return best;
}

} // namespace

TEST(Vectors, RejectsEmptyAndNonFinite) {
    EXPECT_THROW(CoefficientVector(std::vector<double>{}), ArgumentError);
    EXPECT_THROW(CoefficientVector({1.0, std::nan("")}), ArgumentError);
    EXPECT_THROW(CoefficientVector({1.0, std::numeric_limits<double>::infinity()}), ArgumentError);
}

TEST(Vectors, NormExamples) {
    const auto e = vector_norms(CoefficientVector({1.0, 0.0, 0.0}));
    EXPECT_EQ(e.l1, 1.0);
    EXPECT_EQ(e.l2, 1.0);
    EXPECT_EQ(e.l3, 1.0);
    EXPECT_EQ(e.linf, 1.0);
    EXPECT_NEAR(CoefficientVector({3.0, 4.0}).norms().l2, 5.0, 1e-15);
    const auto ones = CoefficientVector(std::vector<double>(9, 1.0)).norms();
    EXPECT_NEAR(ones.l2, 3.0, 1e-15);
    EXPECT_NEAR(ones.l3, std::cbrt(9.0), 1e-14);
}

TEST(Vectors, CachedNormsMatchRecomputation) {
    testkit::Gen g(3);
    for (int c = 0; c < 500; ++c) {
        const auto v = g.signed_reals(g.index(1, 40), 1e-3, 1e3);
        const CoefficientVector a(v);
        double l1 = 0, l2 = 0, l3 = 0, li = 0;
        for (double x : v) {
            l1 += std::abs(x);
            l2 += x * x;
            l3 += std::pow(std::abs(x), 3);
            li = std::max(li, std::abs(x));
        }
        ASSERT_NEAR(a.norms().l1, l1, 1e-12 * l1);
        ASSERT_NEAR(a.norms().l2, std::sqrt(l2), 1e-12 * std::sqrt(l2));
        ASSERT_NEAR(a.norms().l3, std::cbrt(l3), 1e-12 * std::cbrt(l3));
        ASSERT_EQ(a.norms().linf, li);
    }
}

TEST(Vectors, NormsAvoidOverflow) {
    const CoefficientVector big({1e200, 1e200});
    EXPECT_NEAR(big.norms().l2 / 1e200, std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(big.norms().l3 / 1e200, std::cbrt(2.0), 1e-14);
}

TEST(Vectors, DistanceToSparseExamples) {
    EXPECT_EQ(distance_to_sparse(CoefficientVector({1.0, 0.0, 0.0, 0.0}), 1), 0.0);
    EXPECT_NEAR(distance_to_sparse(CoefficientVector({3.0, 4.0}), 1), 3.0, 1e-15);
    EXPECT_NEAR(distance_to_sparse(CoefficientVector({0.5, 0.5, 0.5, 0.5}), 2), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_THROW(distance_to_sparse(CoefficientVector({1.0}), 2), ArgumentError);
}

TEST(Vectors, DistanceToSparseMatchesBruteForce) {
    testkit::Gen g(5);
    for (int c = 0; c < 300; ++c) {
        const auto v = g.signed_reals(g.index(1, 10), 0.0, 2.0);
        const CoefficientVector x(v);
        for (std::size_t s = 0; s <= v.size(); ++s)
            ASSERT_NEAR(distance_to_sparse(x, s), brute_distance_to_sparse(v, s), 1e-12);
    }
}

TEST(Vectors, DistanceToSparseProperties) {
    testkit::Gen g(6);
    for (int c = 0; c < 300; ++c) {
        auto v = g.signed_reals(g.index(1, 30), 0.0, 5.0);
        const CoefficientVector x(v);
        ASSERT_NEAR(distance_to_sparse(x, 0), x.norms().l2, 1e-12 * x.norms().l2);
        ASSERT_EQ(distance_to_sparse(x, v.size()), 0.0);
        for (std::size_t s = 1; s <= v.size(); ++s)
            ASSERT_LE(distance_to_sparse(x, s), distance_to_sparse(x, s - 1));

        const auto perm = g.permutation(v.size());
        std::vector<double> w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = (g.coin() ? -1.0 : 1.0) * v[perm[i]];
        const CoefficientVector y(w);
        const std::size_t s = g.index(0, v.size());
        ASSERT_NEAR(distance_to_sparse(x, s), distance_to_sparse(y, s), 1e-12);
    }
}

TEST(Vectors, ClassificationExamples) {
    std::vector<double> e1(10, 0.0);
    e1[0] = 1.0;
    EXPECT_EQ(classify_compressible(CoefficientVector(e1), {0.1, 0.5}), Compressibility::compressible);
    const CoefficientVector flat(std::vector<double>(100, 0.1));
    EXPECT_EQ(classify_compressible(flat, {0.1, 0.5}), Compressibility::incompressible);
    EXPECT_THROW(classify_compressible(CoefficientVector({1.0, 1.0}), {0.1, 0.5}), ArgumentError);
    EXPECT_THROW(classify_compressible(flat, {0.0, 0.5}), ArgumentError);
    EXPECT_THROW(classify_compressible(flat, {0.5, 1.0}), ArgumentError);
}

TEST(Vectors, ClassificationAgreesWithDirectDistance) {
    testkit::Gen g(7);
    for (int c = 0; c < 300; ++c) {
        auto v = g.unit_vector(50);
        // Make some of the draws nearly sparse so both classes occur.
        if (c % 2 == 0)
            for (std::size_t k = 5; k < 50; ++k) v[k] *= 0.05;
        double s = 0.0;
        for (double x : v) s += x * x;
        for (double& x : v) x /= std::sqrt(s);
        const CoefficientVector x(v);
        std::vector<double> mags(v.size());
        std::transform(v.begin(), v.end(), mags.begin(), [](double t) { return t * t; });
        std::sort(mags.begin(), mags.end());
        double tail = 0.0;
        for (std::size_t k = 0; k < 40; ++k) tail += mags[k];  // drop the floor(0.2 * 50) = 10 largest
        const bool comp = std::sqrt(tail) <= 0.3;
        ASSERT_EQ(classify_compressible(x, {0.2, 0.3}) == Compressibility::compressible, comp);
    }
}

TEST(Vectors, ClassificationIsPermutationInvariant) {
    testkit::Gen g(8);
    for (int c = 0; c < 200; ++c) {
        const auto v = g.unit_vector(g.index(2, 40));
        const auto p = g.permutation(v.size());
        std::vector<double> w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[p[i]];
        const CompressibilityParams prm{g.uniform(0.05, 0.9), g.uniform(0.05, 0.9)};
        ASSERT_EQ(classify_compressible(CoefficientVector(v), prm), classify_compressible(CoefficientVector(w), prm));
    }
}

TEST(Vectors, SpreadSetExamples) {
    const CoefficientVector flat(std::vector<double>(16, 0.25));
    const auto s = spread_set(flat, {0.5, 0.5});
    ASSERT_EQ(s.size(), 16U);
    EXPECT_EQ(s.front(), 0U);
    EXPECT_EQ(s.back(), 15U);
    const auto one = spread_set(CoefficientVector({1.0, 0.0, 0.0, 0.0}), {0.25, 0.5});
    ASSERT_EQ(one.size(), 1U);
    EXPECT_EQ(one[0], 0U);
}

TEST(Vectors, IncompressibleVectorsAreSpread) {
    testkit::Gen g(9);
    int checked = 0;
    for (int c = 0; checked < 1000; ++c) {
        const std::size_t n = 100;
        auto v = g.unit_vector(n);
        // Heavy-tailed perturbations push some draws towards the compressible side.
        for (auto& x : v) x *= std::exp(g.uniform(-2.0, 2.0));
        double s = 0.0;
        for (double x : v) s += x * x;
        for (double& x : v) x /= std::sqrt(s);
        const CoefficientVector x(v);
        const CompressibilityParams p{g.uniform(0.05, 0.5), g.uniform(0.05, 0.5)};
        if (classify_compressible(x, p) != Compressibility::incompressible) continue;
        ++checked;
        ASSERT_GE(static_cast<double>(spread_set(x, p).size()), spread_lower_bound(n, p)) << "case " << c;
    }
}

TEST(Vectors, SpreadPartExamples) {
    const auto sp = spread_part(CoefficientVector({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}), 0.9, 1.1);
    ASSERT_TRUE(sp.has_value());
    EXPECT_EQ(sp->indices, (std::vector<std::size_t>{0, 1}));
    EXPECT_NEAR(sp->scaled_values[0], 1.0, 1e-15);
    EXPECT_NEAR(sp->scaled_values[1], 1.0, 1e-15);
    EXPECT_FALSE(spread_part(CoefficientVector({1.0, 0.0, 0.0, 0.0}), 0.5, 1.5).has_value());
    EXPECT_THROW(spread_part(CoefficientVector({1.0}), 2.0, 1.0), ArgumentError);
    EXPECT_THROW(spread_part(CoefficientVector({1.0}), 1.0, 1.0), ArgumentError);
}

TEST(Vectors, SpreadPartMatchesCoordinateFilter) {
    testkit::Gen g(10);
    for (int c = 0; c < 500; ++c) {
        const auto v = g.unit_vector(20);
        const auto sp = spread_part(CoefficientVector(v), 0.3, 3.0);
        std::vector<std::size_t> expect;
        for (std::size_t k = 0; k < v.size(); ++k) {
            const double s = std::sqrt(20.0) * std::abs(v[k]);
            if (0.3 <= s && s <= 3.0) expect.push_back(k);
        }
        if (expect.empty()) {
            ASSERT_FALSE(sp.has_value());
            continue;
        }
        ASSERT_TRUE(sp.has_value());
        ASSERT_EQ(sp->indices, expect);
        for (double s : sp->scaled_values) {
            ASSERT_GE(std::abs(s), 0.3);
            ASSERT_LE(std::abs(s), 3.0);
        }
    }
}
