#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "mbt/corpus.hpp"
#include "mbt/experiment.hpp"

using namespace mbt;
namespace fs = std::filesystem;

namespace {

nlohmann::json read_json(const fs::path& p) {
    std::ifstream f(p);
    return nlohmann::json::parse(f);
}

}  // namespace

TEST(Corpus, AtLeastTenVariantsSampleFirst) {
    auto suite = mutant_suite();
    ASSERT_GE(suite.size(), 10u);
    EXPECT_EQ(suite[0].id, "sample");
    EXPECT_TRUE(suite[0].expected_failures.empty());
    for (std::size_t i = 1; i < suite.size(); ++i) EXPECT_FALSE(suite[i].expected_failures.empty()) << suite[i].id;
}

TEST(Corpus, UnknownVariant) { EXPECT_THROW(build_fruit_catcher("nope"), std::invalid_argument); }

TEST(Corpus, SampleCatchAddsFivePoints) {
    auto p = build_fruit_catcher("sample");
    auto text = program_to_json(p).dump();
    EXPECT_NE(text.find(R"("op":"changeVar","value":5.0,"var":"Points")"), std::string::npos);
}

TEST(Corpus, BuggyBowlLacksRightHandler) {
    auto text = program_to_json(build_fruit_catcher("buggy-bowl")).dump();
    EXPECT_EQ(text.find(R"("key":"right")"), std::string::npos);
    EXPECT_NE(text.find(R"("secs":2.0,"text":"Ende!")"), std::string::npos);
}

TEST(Corpus, ApplePointsChainHasForceAfter) {
    auto models = fruit_models();
    const auto& apple = models[1];
    ASSERT_EQ(apple.id, "apple");
    auto it = std::find_if(apple.edges.begin(), apple.edges.end(), [](const Edge& e) { return e.from == "bowl"; });
    ASSERT_NE(it, apple.edges.end());
    EXPECT_EQ(it->to, "points");
    EXPECT_EQ(it->force_test_after, 1500);
}

TEST(Corpus, UserModelShape) {
    auto models = fruit_models();
    const auto& u = models.back();
    EXPECT_EQ(u.usage, Usage::User);
    for (const char* s : {"dontMove", "dodge", "onlyApple", "fruits"}) EXPECT_TRUE(u.has_node(s)) << s;
    auto out = u.outgoing("start");
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(out[0]->conditions[0].kind, CheckKind::Probability);
}

TEST(Corpus, CommittedFilesMatchBuilders) {
    const fs::path root = corpus_dir();
    ASSERT_TRUE(fs::exists(root / "variants.json")) << root;
    for (const auto& v : mutant_suite()) {
        EXPECT_EQ(read_json(root / "programs" / (v.id + ".json")), program_to_json(v.program)) << v.id;
    }
    EXPECT_EQ(read_json(root / "models" / "fruit-models.json"), models_to_json(fruit_models()));
    for (const auto& s : scripted_suite()) {
        EXPECT_EQ(parse_input_script_file((root / "inputs" / (s.name + ".json")).string()), s.inputs) << s.name;
    }
}

TEST(Corpus, WriteCorpusRoundTrips) {
    const fs::path dir = fs::temp_directory_path() / "mbt_corpus_test";
    fs::remove_all(dir);
    write_corpus(dir.string());
    EXPECT_EQ(load_program_file((dir / "programs" / "sample.json").string()), build_fruit_catcher("sample"));
    EXPECT_EQ(parse_models_file((dir / "models" / "fruit-models.json").string()), fruit_models());
    fs::remove_all(dir);
}

TEST(Corpus, DeadCodeNeverFullyCovered) {
    ExperimentConfig cfg;
    cfg.gen_repetitions = 5;
    auto p = build_fruit_catcher("dead-code");
    for (auto arm : {InputSource::UserModels, InputSource::Scripted}) {
        EXPECT_LT(run_seed_outcome("dead-code", p, fruit_models(), arm, 1, cfg).coverage, 1.0);
    }
}

TEST(Corpus, WrongRespawnDoesNotDeadlockApple) {
    RunConfig cfg;
    cfg.acceleration = 10;
    cfg.seed = 3;
    auto r = run(std::make_shared<const SpriteProgram>(build_fruit_catcher("wrong-respawn")), fruit_models(), cfg);
    bool back_to_start = false;
    for (const auto& t : r.transitions) back_to_start |= t.model_id == "apple" && t.edge_id == "points-start";
    EXPECT_TRUE(back_to_start);
}

TEST(Corpus, NonHaltingReportsChanges) {
    RunConfig cfg;
    cfg.acceleration = 10;
    auto r = run(std::make_shared<const SpriteProgram>(build_fruit_catcher("non-halting-after-end")), fruit_models(), cfg);
    bool changed = false;
    for (const auto& f : r.failures) changed |= f.model_id == "end" && f.message.find("changed") != std::string::npos;
    EXPECT_TRUE(changed);
}

TEST(Corpus, EveryVariantReportsItsExpectedFailures) {
    ExperimentConfig cfg;
    cfg.repetitions = 3;
    const auto outcomes = run_experiment_serial(cfg);
    for (const auto& v : mutant_suite()) {
        for (const auto& o : outcomes) {
            if (o.variant != v.id) continue;
            const auto arm = input_source_name(o.arm);
            if (v.expected_failures.empty()) EXPECT_TRUE(o.failures.empty()) << v.id << " " << arm;
            for (const auto& want : v.expected_failures) {
                bool found = false;
                for (const auto& f : o.failures) found = found || f.second.find(want) != std::string::npos;
                EXPECT_TRUE(found) << v.id << " " << arm << " seed " << o.seed << ": " << want;
            }
        }
    }
}
