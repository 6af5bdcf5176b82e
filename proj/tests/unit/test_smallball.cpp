#include "lolab/errors.hpp"
#include "lolab/rng.hpp"
#include "lolab/smallball.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace lolab;
using namespace lolab::smallball;
namespace lt = lolab::testkit;

namespace {

CoefficientVector ones(std::size_t n) { return CoefficientVector(std::vector<double>(n, 1.0)); }

const DistributionSpec rad = DistributionSpec::rademacher();

// Random finite law with 2..4 atoms, as both a spec and oracle atom list.
std::pair<DistributionSpec, std::vector<std::pair<double, double>>> random_law(lt::Gen& g) {
    const std::size_t k = g.index(2, 4);
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) total += (x = g.uniform(0.2, 1.0));
    std::vector<Atom> atoms;
    std::vector<std::pair<double, double>> pairs;
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double v = static_cast<double>(g.integer(-3, 3)) + static_cast<double>(i) * 7.0;
        const double p = i + 1 == k ? 1.0 - acc : w[i] / total;
        acc += p;
        atoms.push_back({v, p});
        pairs.emplace_back(v, p);
    }
    return {DistributionSpec::discrete(atoms), pairs};
}

} // namespace

TEST(ExactSmallBall, PaperAndEnumerationExamples) {
    EXPECT_DOUBLE_EQ(exact_small_ball(CoefficientVector({1.0, 1.0}), 0.0, rad).value, 0.5);
    EXPECT_DOUBLE_EQ(exact_small_ball(ones(4), 0.0, rad).value, 6.0 / 16.0);
    EXPECT_DOUBLE_EQ(exact_small_ball(ones(10), 1.0, rad).value, 462.0 / 1024.0);
    const auto e = exact_small_ball(ones(4), 0.0, rad);
    EXPECT_EQ(e.method, Method::exact);
    EXPECT_EQ(e.error_band, 0.0);
    EXPECT_EQ(e.center, 0.0);
}

TEST(ExactSmallBall, ErrorPaths) {
    EXPECT_THROW(exact_small_ball(ones(30), 1.0, rad), CapacityError);
    EXPECT_THROW(exact_small_ball(ones(3), 1.0, DistributionSpec::gaussian()), CapabilityError);
    EXPECT_THROW(exact_small_ball(ones(3), -1.0, rad), ArgumentError);
    EXPECT_NO_THROW(exact_small_ball(ones(20), 1.0, rad));
}

TEST(ExactSmallBall, MatchesBruteForce) {
    lt::Gen g(31);
    for (int c = 0; c < 200; ++c) {
        const auto [law, pairs] = random_law(g);
        const std::size_t n = g.index(1, pairs.size() > 2 ? 5 : 9);
        const auto v = g.signed_reals(n, 0.1, 3.0);
        const double eps = g.coin() ? 0.0 : g.uniform(0.0, 4.0);
        const double got = exact_small_ball(CoefficientVector(v), eps, law).value;
        ASSERT_NEAR(got, lt::brute_small_ball(v, eps, pairs), 1e-12) << "case " << c;
    }
}

TEST(ExactSmallBall, MonotoneInEpsAndSaturates) {
    lt::Gen g(32);
    for (int c = 0; c < 100; ++c) {
        const CoefficientVector a(g.signed_reals(g.index(1, 10), 0.1, 3.0));
        double prev = 0.0;
        for (double eps : {0.0, 0.1, 0.3, 0.7, 1.5, 3.0}) {
            const double p = exact_small_ball(a, eps, rad).value;
            ASSERT_GE(p, prev - 1e-15);
            prev = p;
        }
        ASSERT_DOUBLE_EQ(exact_small_ball(a, a.norms().l1 + 1.0, rad).value, 1.0);
    }
}

TEST(ExactSmallBall, ShiftInvariance) {
    lt::Gen g(33);
    for (int c = 0; c < 100; ++c) {
        const std::size_t n = g.index(1, 10);
        const CoefficientVector a(g.signed_reals(n, 0.1, 3.0));
        const double eps = g.uniform(0.0, 2.0);
        const auto shifted = rad.shifted(g.reals(n, -5.0, 5.0));
        ASSERT_NEAR(exact_small_ball(a, eps, rad).value, exact_small_ball(a, eps, shifted).value, 1e-12);
    }
}

TEST(ExactSmallBall, ScaleDuality) {
    lt::Gen g(34);
    for (int c = 0; c < 100; ++c) {
        const CoefficientVector a(g.signed_reals(g.index(1, 10), 0.1, 3.0));
        const double eps = g.uniform(0.0, 2.0), s = g.uniform(0.1, 10.0);
        ASSERT_NEAR(exact_small_ball(a, eps, rad).value, exact_small_ball(a.scaled(s), s * eps, rad).value, 1e-12);
    }
}

TEST(MonteCarloSmallBall, AgreesWithExactAndNormalCdf) {
    const auto two = monte_carlo_small_ball(CoefficientVector({1.0, 1.0}), 0.0, rad, 100000, 1);
    EXPECT_NEAR(two.value, 0.5, 0.01);
    EXPECT_EQ(two.method, Method::monte_carlo);
    EXPECT_EQ(*two.samples, 100000U);
    const auto g = monte_carlo_small_ball(CoefficientVector({1.0}), 0.1, DistributionSpec::gaussian(), 100000, 2);
    EXPECT_NEAR(g.value, std::erf(0.1 / std::numbers::sqrt2), g.error_band);
    EXPECT_DOUBLE_EQ(monte_carlo_small_ball(ones(5), 100.0, rad, 500, 3).value, 1.0);
    EXPECT_THROW(monte_carlo_small_ball(ones(5), 1.0, rad, 99, 3), ArgumentError);
}

TEST(MonteCarloSmallBall, Deterministic) {
    const auto a = monte_carlo_small_ball(ones(7), 0.5, DistributionSpec::gaussian(), 5000, 77);
    const auto b = monte_carlo_small_ball(ones(7), 0.5, DistributionSpec::gaussian(), 5000, 77);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.center, b.center);
}

TEST(MonteCarloSmallBall, BandCoverage) {
    const CoefficientVector a({1.0, 1.0, 1.0});
    const double exact = exact_small_ball(a, 0.5, rad).value;
    int covered = 0;
    for (std::uint64_t rep = 0; rep < 1000; ++rep) {
        const auto mc = monte_carlo_small_ball(a, 0.5, rad, 1000, rep);
        covered += std::abs(mc.value - exact) <= mc.error_band ? 1 : 0;
    }
    EXPECT_GE(covered, 950);
}

TEST(CltBound, Examples) {
    const double k = std::sqrt(2.0 / std::numbers::pi);
    EXPECT_NEAR(clt_bound(CoefficientVector({1.0, 0.0, 0.0}), 0.3, 1.0).value, k * 0.3 + 0.56, 1e-15);
    EXPECT_NEAR(clt_bound(ones(16), 1.0, 1.0).value, k / 4.0 + 0.56 / 4.0, 1e-15);
    EXPECT_NEAR(clt_bound(CoefficientVector({3.0, 4.0}), 0.5, 1.0, 0.56).value, k * 0.1 + 0.56 * 91.0 / 125.0, 1e-15);
    EXPECT_NEAR(clt_bound(CoefficientVector({3.0, 4.0}), 0.5, 1.0, 0.56).value, 0.4875, 1e-4);
    EXPECT_THROW(clt_bound(CoefficientVector({0.0, 0.0}), 0.5, 1.0), ArgumentError);
}

TEST(Characteristic, ClosedForms) {
    const CoefficientVector a({1.0, 2.0});
    EXPECT_NEAR(characteristic_modulus(a, rad, 0.3), std::abs(std::cos(0.3) * std::cos(0.6)), 1e-15);
    EXPECT_NEAR(characteristic_modulus(a, DistributionSpec::gaussian(), 0.3), std::exp(-0.5 * 5.0 * 0.09), 1e-15);
    const auto as_discrete = DistributionSpec::discrete({{-1.0, 0.5}, {1.0, 0.5}});
    EXPECT_NEAR(characteristic_modulus(a, as_discrete, 0.3), characteristic_modulus(a, rad, 0.3), 1e-15);
    lt::Gen g(35);
    for (int c = 0; c < 100; ++c) {
        const CoefficientVector b(g.signed_reals(g.index(1, 10), 0.1, 3.0));
        ASSERT_NEAR(characteristic_modulus(b, rad, 0.0), 1.0, 1e-15);
        const double v = characteristic_modulus(b, rad, g.uniform(-10, 10));
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
    }
}

TEST(Esseen, ClosedFormSingleCoordinate) {
    const double eps = std::numbers::pi / 4.0;
    const auto r = esseen_integral(CoefficientVector({1.0}), eps, rad);
    EXPECT_NEAR(r.value, eps * (4.0 - 2.0 * std::sin(2.0)), 1e-6);
    EXPECT_NEAR(r.value, 1.7133, 1e-4);
}

TEST(Esseen, RefinementSelfConsistency) {
    const auto coarse = esseen_integral(ones(20), 1.0, rad, 4096);
    const auto fine = esseen_integral(ones(20), 1.0, rad, 40960);
    EXPECT_NEAR(coarse.value, fine.value, 0.01 * fine.value);
    EXPECT_LE(coarse.error_estimate, 0.01 * coarse.value);
    EXPECT_THROW(esseen_integral(ones(2), 0.0, rad), ArgumentError);
    EXPECT_THROW(esseen_integral(ones(2), 1.0, rad, 10), ArgumentError);
}

TEST(Halasz, FunctionalExamples) {
    EXPECT_EQ(halasz_functional(ones(5), 0.0), 0.0);
    EXPECT_NEAR(halasz_functional(ones(6), std::numbers::pi), 6.0, 1e-14);
    EXPECT_NEAR(halasz_functional(CoefficientVector({1.0, 2.0}), std::numbers::pi / 2.0), 1.5, 1e-14);
}

TEST(Halasz, MaxExamples) {
    const auto m = halasz_max(ones(8), 1.0, 0.5);
    EXPECT_GE(m.value, 2.0);
    EXPECT_LE(m.value, 8.0);
    EXPECT_TRUE(m.within_bounds);
    const auto single = halasz_max(CoefficientVector({1.0}), 1.0, 0.5);
    EXPECT_NEAR(single.value, 1.0, 1e-12);
    EXPECT_THROW(halasz_max(CoefficientVector({0.5}), 1.0, 0.5), PreconditionError);
    EXPECT_THROW(halasz_max(ones(2), 0.5, 0.5), PreconditionError);
    EXPECT_THROW(halasz_max(ones(2), 1.0, 1.0), PreconditionError);
}

TEST(Halasz, GridAgreesWithRefinementAndBounds) {
    lt::Gen g(36);
    for (int c = 0; c < 50; ++c) {
        const auto m = halasz_max(CoefficientVector(g.reals(10, 1.0, 2.0)), 1.5, 0.3);
        ASSERT_NEAR(m.grid_value, m.value, 1e-6);
        ASSERT_GE(m.value, m.grid_value);
        ASSERT_TRUE(m.within_bounds);
    }
}

TEST(LevelSet, Examples) {
    const auto full = level_set_measure(ones(4), 1.0, 0.5, 4.0, 1.5, 1000);
    EXPECT_NEAR(full.measure, 3.0, 1e-12);
    const auto shrink1 = level_set_measure(CoefficientVector({1.0}), std::numbers::sqrt2, 1.0, 0.0, 3.0, 1000);
    const auto shrink2 = level_set_measure(CoefficientVector({1.0}), std::numbers::sqrt2, 1.0, 0.0, 3.0, 100000);
    EXPECT_LE(shrink2.measure, shrink1.measure);
    EXPECT_LE(shrink2.measure, 1e-3);

    const CoefficientVector a({1.0, 1.0});
    const auto c = level_set_measure(a, 1.0, 1.0, 0.5, std::numbers::pi, 10000);
    const auto f = level_set_measure(a, 1.0, 1.0, 0.5, std::numbers::pi, 100000);
    EXPECT_LE(std::abs(c.measure - f.measure), c.error_bound + f.error_bound);
    // f(t) = 2 sin^2(t/2) <= 0.5 exactly on |t| <= pi/3.
    EXPECT_NEAR(f.measure, 2.0 * std::numbers::pi / 3.0, f.error_bound + 1e-12);
}

TEST(Regularity, Examples) {
    EXPECT_TRUE(regularity_check(ones(8), 1.0, 0.5, 0.3, 1, 20000).pass);
    EXPECT_TRUE(regularity_check(ones(8), 1.0, 0.5, 0.1, 2, 20000).pass);
    EXPECT_THROW(regularity_check(ones(8), 1.0, 0.5, 1.0, 3, 2000), PreconditionError);
    EXPECT_THROW(regularity_check(ones(8), 1.0, 0.5, 1.0, 0, 2000), PreconditionError);
}

TEST(TheoremBound, AllOnesExample) {
    TheoremParams p;
    p.eps = 1.0;
    p.alpha = 0.15;
    p.kappa = 25.0;
    const auto r = theorem_bound(ones(100), p);
    EXPECT_NEAR(r.value, 0.2 * (1.0 + 1.0 / 0.7) + std::exp(-0.0225 * 25.0), 1e-12);
    EXPECT_TRUE(r.flags.empty());
}

TEST(TheoremBound, DecreasesInKappaWhenLcdIsFixed) {
    TheoremParams p;
    p.eps = 0.5;
    p.alpha = 0.1;
    double prev = std::numeric_limits<double>::infinity();
    for (double kappa : {5.0, 10.0, 20.0, 40.0}) {
        p.kappa = kappa;
        const double v = theorem_bound(ones(100), p).value;
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(TheoremBound, FlagsAndHypotheses) {
    TheoremParams p;
    p.eps = 0.5;
    p.alpha = 0.01;
    p.kappa = 0.4;
    p.t_max = 0.5;
    p.K = std::numbers::pi;
    const auto r = theorem_bound(CoefficientVector({1.0, std::numbers::sqrt2, std::numbers::pi}), p);
    EXPECT_TRUE(r.has_flag("lcd_not_found"));
    EXPECT_NEAR(r.value, std::pow(std::numbers::pi, 3) / std::sqrt(0.4) * 0.5 + std::exp(-4e-5), 1e-12);
    p.kappa = 3.0;
    EXPECT_THROW(theorem_bound(CoefficientVector({1.0, 1.0, 1.0}), p), PreconditionError);
    p.kappa = 1.0;
    p.alpha = 0.2;
    EXPECT_THROW(theorem_bound(CoefficientVector({1.0, 1.0, 1.0}), p), PreconditionError);
}

TEST(Restriction, Examples) {
    const std::vector<std::size_t> all{0, 1, 2, 3};
    const auto same = restriction_check(ones(4), all, 0.5, rad);
    EXPECT_DOUBLE_EQ(same.full, same.restricted);
    const std::vector<std::size_t> half{0, 1};
    const auto r = restriction_check(ones(4), half, 0.0, rad);
    EXPECT_DOUBLE_EQ(r.full, 6.0 / 16.0);
    EXPECT_DOUBLE_EQ(r.restricted, 0.5);
    EXPECT_TRUE(r.pass);
}

TEST(Restriction, RandomCorpus) {
    lt::Gen g(37);
    for (int c = 0; c < 200; ++c) {
        const std::size_t n = g.index(1, 12);
        const CoefficientVector a(g.signed_reals(n, 0.1, 3.0));
        const auto sigma = g.subset(n);
        const auto law = g.coin() ? rad : rad.shifted(g.reals(n, -2.0, 2.0));
        ASSERT_TRUE(restriction_check(a, sigma, g.uniform(0.0, 2.0), law).pass) << "case " << c;
    }
}
