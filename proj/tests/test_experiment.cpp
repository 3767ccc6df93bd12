#include <gtest/gtest.h>

#include "mbt/experiment.hpp"
#include "mbt/stats.hpp"

using namespace mbt;

namespace {

ExperimentConfig small() {
    ExperimentConfig c;
    c.variants = {"sample", "fixed-fruit-position"};
    c.repetitions = 3;
    c.gen_repetitions = 4;
    return c;
}

SeedOutcome outcome(const std::string& v, InputSource arm, std::uint64_t seed, double cov) {
    SeedOutcome o;
    o.variant = v;
    o.arm = arm;
    o.seed = seed;
    o.coverage = cov;
    o.runs = 1;
    return o;
}

}  // namespace

TEST(Experiment, ParallelEqualsSerial) {
    auto cfg = small();
    EXPECT_EQ(run_experiment_parallel(cfg), run_experiment_serial(cfg));
}

TEST(Experiment, TaskOrderAndCounts) {
    auto out = run_experiment_serial(small());
    ASSERT_EQ(out.size(), 2u * 2u * 3u);
    EXPECT_EQ(out[0].variant, "sample");
    EXPECT_EQ(out[0].arm, InputSource::UserModels);
    EXPECT_EQ(out[0].seed, 1u);
    EXPECT_EQ(out[0].runs, 4u);
    EXPECT_EQ(out[3].arm, InputSource::Scripted);
    EXPECT_EQ(out[3].runs, scripted_suite().size());
}

TEST(Aggregate, SampleBothArmsFull) {
    auto cfg = small();
    cfg.gen_repetitions = 20;
    auto s = aggregate_experiment(run_experiment_serial(cfg));
    ASSERT_EQ(s.variants.size(), 2u);
    EXPECT_DOUBLE_EQ(s.variants[0].user_mean, 1.0);
    EXPECT_DOUBLE_EQ(s.variants[0].scripted_mean, 1.0);
    EXPECT_DOUBLE_EQ(s.variants[0].a12, 0.5);
}

TEST(Aggregate, DominatingArm) {
    std::vector<SeedOutcome> o;
    for (std::uint64_t s = 1; s <= 3; ++s) {
        o.push_back(outcome("v", InputSource::UserModels, s, 0.9 + 0.01 * double(s)));
        o.push_back(outcome("v", InputSource::Scripted, s, 0.5));
    }
    auto sum = aggregate_experiment(o);
    EXPECT_DOUBLE_EQ(sum.variants[0].a12, 1.0);
    EXPECT_NEAR(sum.variants[0].user_mean, 0.92, 1e-9);
}

TEST(Aggregate, SingleRunPerArm) {
    auto sum = aggregate_experiment({outcome("v", InputSource::UserModels, 1, 0.8), outcome("v", InputSource::Scripted, 1, 0.6)});
    EXPECT_DOUBLE_EQ(sum.variants[0].user_mean, 0.8);
    EXPECT_DOUBLE_EQ(sum.variants[0].scripted_mean, 0.6);
    EXPECT_GT(sum.variants[0].p_value, 0.05);
}

TEST(Aggregate, MismatchedArmsRejected) {
    EXPECT_THROW(aggregate_experiment({outcome("v", InputSource::UserModels, 1, 0.8), outcome("w", InputSource::Scripted, 1, 0.6)}),
                 std::invalid_argument);
}

TEST(Aggregate, MeansMatchPerSeedValues) {
    auto out = run_experiment_serial(small());
    auto sum = aggregate_experiment(out);
    for (const auto& v : sum.variants) {
        double total = 0;
        std::size_t n = 0;
        for (const auto& o : out) {
            if (o.variant == v.variant && o.arm == InputSource::UserModels) {
                total += o.coverage;
                ++n;
            }
        }
        EXPECT_NEAR(v.user_mean, total / double(n), 1e-9);
    }
}

TEST(Experiment, CsvAndSummaryShape) {
    auto out = run_experiment_serial(small());
    auto csv = experiment_csv(out);
    EXPECT_EQ(csv.rfind("variant,arm,seed,coverage,failures\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), long(out.size()) + 1);
    auto j = summary_to_json(aggregate_experiment(out));
    EXPECT_EQ(j["variants"].size(), 2u);
    EXPECT_TRUE(j["variants"][0].contains("a12"));
}

TEST(Experiment, ArmsShareSeedStream) {
    EXPECT_EQ(run_seed(5, 0), run_seed(5, 0));
    EXPECT_NE(run_seed(5, 0), run_seed(5, 1));
    EXPECT_NE(run_seed(5, 0), run_seed(6, 0));
}
