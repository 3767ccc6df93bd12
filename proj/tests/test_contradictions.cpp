#include <gtest/gtest.h>

#include "mbt/contradictions.hpp"
#include "support.hpp"

using namespace mbt;
using mbt::test::chk;

namespace {

PendingEffect pe(Check c) { return {"m", "e", std::move(c), nullptr}; }

}  // namespace

TEST(DetectContradictions, DisjointIntervals) {
    auto pairs = detect_contradictions({pe(chk(CheckKind::AttrComp, {"Bowl", "x", ">", 0.0})),
                                        pe(chk(CheckKind::AttrComp, {"Bowl", "x", "<", -1.0}))});
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0].first, 0u);
    EXPECT_EQ(pairs[0].second, 1u);
}

TEST(DetectContradictions, OutputVersusNoOutput) {
    auto pairs = detect_contradictions({pe(chk(CheckKind::Output, {"Bowl", "/End/"})), pe(chk(CheckKind::NoOutput, {"Bowl"}))});
    EXPECT_EQ(pairs.size(), 1u);
}

TEST(DetectContradictions, DisjointTargets) {
    auto pairs = detect_contradictions({pe(chk(CheckKind::AttrChange, {"Bowl", "x", "+"})),
                                        pe(chk(CheckKind::VarChange, {"global", "Points", "+5"}))});
    EXPECT_TRUE(pairs.empty());
}

TEST(DetectContradictions, OppositeNegation) {
    auto pairs = detect_contradictions({pe(chk(CheckKind::TouchingEdge, {"Bowl"})), pe(chk(CheckKind::TouchingEdge, {"Bowl"}, true))});
    EXPECT_EQ(pairs.size(), 1u);
}

TEST(DetectContradictions, OppositeDirections) {
    auto pairs = detect_contradictions({pe(chk(CheckKind::AttrChange, {"Bowl", "x", "+"})),
                                        pe(chk(CheckKind::AttrChange, {"Bowl", "x", "-"}))});
    EXPECT_EQ(pairs.size(), 1u);
}

TEST(DetectContradictions, UnchangedVersusChange) {
    auto pairs = detect_contradictions({pe(chk(CheckKind::Unchanged, {"Bowl", "x"})),
                                        pe(chk(CheckKind::AttrChange, {"Bowl", "x", "+"})),
                                        pe(chk(CheckKind::Unchanged, {"global", "Points"})),
                                        pe(chk(CheckKind::VarChange, {"global", "Points", "+5"}))});
    ASSERT_EQ(pairs.size(), 2u);
    EXPECT_EQ(pairs[0].first, 0u);
    EXPECT_EQ(pairs[0].second, 1u);
    EXPECT_EQ(pairs[1].first, 2u);
    EXPECT_EQ(pairs[1].second, 3u);
}

TEST(DetectContradictions, CompatibleComparisons) {
    EXPECT_TRUE(detect_contradictions({pe(chk(CheckKind::AttrComp, {"Bowl", "x", ">=", -200.0})),
                                       pe(chk(CheckKind::AttrComp, {"Bowl", "x", "<=", 200.0}))})
                    .empty());
    EXPECT_TRUE(detect_contradictions({pe(chk(CheckKind::AttrComp, {"Bowl", "x", ">=", 1.0})),
                                       pe(chk(CheckKind::AttrComp, {"Bowl", "x", "<=", 1.0}))})
                    .empty());
    EXPECT_EQ(detect_contradictions({pe(chk(CheckKind::AttrComp, {"Bowl", "x", ">", 1.0})),
                                     pe(chk(CheckKind::AttrComp, {"Bowl", "x", "<=", 1.0}))})
                  .size(),
              1u);
}

TEST(DetectContradictions, SymmetricAndIrreflexive) {
    const std::vector<Check> checks = {
        chk(CheckKind::AttrComp, {"Bowl", "x", ">", 0.0}),     chk(CheckKind::AttrComp, {"Bowl", "x", "<", -1.0}),
        chk(CheckKind::Output, {"Bowl"}),                      chk(CheckKind::NoOutput, {"Bowl"}),
        chk(CheckKind::Unchanged, {"Bowl", "x"}),              chk(CheckKind::AttrChange, {"Bowl", "x", "-"}),
        chk(CheckKind::AttrComp, {"Bowl", "x", "=", 3.0}, true), chk(CheckKind::AttrComp, {"Bowl", "x", "=", 3.0}),
    };
    for (const auto& a : checks) {
        EXPECT_FALSE(contradiction_reason(pe(a), pe(a)).has_value()) << describe(a);
        for (const auto& b : checks) {
            EXPECT_EQ(contradiction_reason(pe(a), pe(b)).has_value(), contradiction_reason(pe(b), pe(a)).has_value())
                << describe(a) << " / " << describe(b);
        }
    }
}

TEST(Interval, Basics) {
    auto gt0 = *solution_interval(">", 0, false);
    EXPECT_FALSE(gt0.contains(0));
    EXPECT_TRUE(gt0.contains(0.001));
    auto le0 = *solution_interval(">", 0, true);
    EXPECT_TRUE(le0.contains(0));
    EXPECT_TRUE(gt0.intersect(le0).empty());
    auto eq = *solution_interval("=", 2, false);
    EXPECT_TRUE(eq.contains(2));
    EXPECT_FALSE(eq.empty());
    EXPECT_FALSE(solution_interval("=", 2, true).has_value());
}
