#include <gtest/gtest.h>

#include <vector>

#include "mbt/stats.hpp"

using mbt::a12;
using mbt::mann_whitney_p;
using V = std::vector<double>;

TEST(A12, Examples) {
    EXPECT_DOUBLE_EQ(a12(V{1, 1, 1}, V{0, 0, 0}), 1.0);
    EXPECT_DOUBLE_EQ(a12(V{0, 0, 0}, V{1, 1, 1}), 0.0);
    EXPECT_DOUBLE_EQ(a12(V{4, 2, 9}, V{4, 2, 9}), 0.5);
    EXPECT_DOUBLE_EQ(a12(V{2, 3}, V{1, 4}), 0.5);
    EXPECT_DOUBLE_EQ(a12(V{1}, V{1}), 0.5);
}

TEST(A12, EmptySampleThrows) {
    EXPECT_THROW(a12(V{}, V{1}), std::invalid_argument);
    EXPECT_THROW(a12(V{1}, V{}), std::invalid_argument);
}

TEST(MannWhitney, MatchesScipyAsymptotic) {
    // scipy.stats.mannwhitneyu(a, b, alternative="two-sided", method="asymptotic")
    struct Case {
        V a, b;
        double p;
    };
    const std::vector<Case> cases = {
        {{1, 2, 3, 4, 5}, {6, 7, 8, 9, 10}, 0.012185780355344813},
        {{0.9, 0.95, 0.95, 1.0, 1.0, 1.0}, {0.9, 0.9, 0.95, 1.0}, 0.366256395824783},
        {{1, 1, 2, 3}, {1, 2, 2, 4, 5}, 0.37485714268334},
        {V(30, 0.5), [] { V b(29, 0.6); b.push_back(0.5); return b; }(), 1.1650583466475726e-13},
        {{3.1, 2.2, 5.5, 1.0, 4.4, 6.0, 2.2}, {2.0, 2.2, 9.1, 0.3}, 0.504430998762287},
    };
    for (const auto& c : cases) EXPECT_NEAR(mann_whitney_p(c.a, c.b), c.p, 1e-12 + 1e-9 * c.p);
}

TEST(MannWhitney, DegenerateSamples) {
    EXPECT_EQ(mann_whitney_p(V{1, 1, 1}, V{1, 1}), 1.0);
    EXPECT_EQ(mann_whitney_p(V{0.5}, V{0.5}), 1.0);
    const double p = mann_whitney_p(V{1}, V{2});
    EXPECT_GT(p, 0.05);
}

TEST(Ranks, TiesShareMean) {
    auto r = mbt::average_ranks(V{10, 20, 10, 30});
    EXPECT_EQ(r, (V{1.5, 3, 1.5, 4}));
}

TEST(Mean, Arithmetic) { EXPECT_DOUBLE_EQ(mbt::mean(V{1, 2, 3, 4}), 2.5); }
