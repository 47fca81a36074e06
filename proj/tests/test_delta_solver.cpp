#include "gutkin/delta_solver.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

using namespace gutkin;

namespace {

constexpr double kPi = std::numbers::pi;

// Reference roots computed offline with an independent bracketing solver.
const std::map<int, std::vector<double>> kFrozen = {
    {4, {1.1502619915109316}},
    {5, {0.9117382909684876}},
    {6, {0.7562528765212613, 1.30133059973718}},
    {7, {0.6464715292527133, 1.1119317099395956}},
    {8, {0.5646973533975597, 0.9710907136162349, 1.3712881132463905}},
    {9, {0.5013750096136503, 0.8621132303365114, 1.217175783514672}},
    {10, {0.4508696740316958, 0.7752278715552725, 1.0944016326671264, 1.4121165795725403}},
    {13, {0.34633687260318424, 0.5954556847056306, 0.8405234833865045, 1.084346897206321, 1.327667868393712}},
};

}  // namespace

TEST(DeltaSolver, MatchesFrozenRoots)
{
    for (const auto& [n, expected] : kFrozen) {
        const auto roots = solve_gutkin_delta(n);
        ASSERT_EQ(roots.size(), expected.size()) << "n=" << n;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            EXPECT_EQ(roots[i].n, n);
            EXPECT_NEAR(roots[i].delta, expected[i], 1e-13) << "n=" << n;
        }
    }
}

TEST(DeltaSolver, ResidualsInQuadPrecision)
{
    for (int n = 4; n <= 30; ++n) {
        const auto roots = solve_gutkin_delta(n);
        ASSERT_FALSE(roots.empty());
        for (const auto& r : roots) {
            // The double root is within a few ulps of the true root, so its
            // exact residual is bounded by slope × ulp. Up to n = 10 that
            // stays below 1e-10; near π/2 for larger n the slope is ~1e6.
            const double sn = 1.0 / std::cos(n * r.delta), s1 = 1.0 / std::cos(r.delta);
            const double slope = std::abs(n * sn * sn - n * s1 * s1);
            const double ulp = std::nextafter(r.delta, 2.0) - r.delta;
            if (n <= 10) EXPECT_LT(r.residual, 1e-10);
            EXPECT_LT(r.residual, std::max(1e-10, 8 * slope * ulp)) << "n=" << n;
            EXPECT_LT(oracle::quad_residual(n, r.delta), 1e-13 + 8 * slope * ulp) << "n=" << n;
            EXPECT_GT(r.delta, 0.0);
            EXPECT_LT(r.delta, kPi / 2);
        }
        for (std::size_t i = 1; i < roots.size(); ++i) EXPECT_LT(roots[i - 1].delta, roots[i].delta);
    }
}

TEST(DeltaSolver, OneRootPerInteriorBranch)
{
    // Branches of tan(nδ) inside (π/(2n), π/2) each carry exactly one root.
    for (int n = 4; n <= 40; ++n) {
        int branches = 0;
        // Poles at (2k+1)π/(2n) < π/2, counted in integers.
        for (int k = 1; 2 * k + 1 < n; ++k) ++branches;
        const auto roots = solve_gutkin_delta(n);
        EXPECT_GE(static_cast<int>(roots.size()), branches) << "n=" << n;
        EXPECT_LE(static_cast<int>(roots.size()), branches + 1) << "n=" << n;
    }
}

TEST(DeltaSolver, NFourBracket)
{
    const auto roots = solve_gutkin_delta(4);
    bool inside = false;
    for (const auto& r : roots) inside = inside || (r.delta > kPi / 4 && r.delta < 3 * kPi / 8);
    EXPECT_TRUE(inside);
}

TEST(DeltaSolver, RejectsSmallN)
{
    EXPECT_THROW(solve_gutkin_delta(3), std::invalid_argument);
    EXPECT_THROW(solve_gutkin_delta(0), std::invalid_argument);
}

TEST(DeltaSolver, ResidualFunction)
{
    EXPECT_NEAR(gutkin_residual(4, 0.3), std::abs(std::tan(1.2) - 4 * std::tan(0.3)), 1e-15);
}

TEST(DeltaSolver, NearCollisionsAreBetweenDifferentOrders)
{
    const auto hits = root_near_collisions(4, 40, 1e-3);
    for (const auto& h : hits) {
        EXPECT_NE(h.first.n, h.second.n);
        EXPECT_LT(h.separation, 1e-3);
        EXPECT_GE(h.separation, 0.0);
    }
}
