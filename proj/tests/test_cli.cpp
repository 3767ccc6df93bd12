#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "mbt/corpus.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = mbt::cli::main(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path tmp(const std::string& name) { return fs::temp_directory_path() / ("mbt_cli_" + name); }

}  // namespace

TEST(Cli, RunSampleExitsZero) {
    auto r = cli({"run", "--variant", "sample", "--builtin", "--seed", "7"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.find("not ok"), std::string::npos);
    EXPECT_NE(r.out.find("TAP version 13"), std::string::npos);
}

TEST(Cli, RunBuggyBowlExitsOne) {
    auto r = cli({"run", "--variant", "buggy-bowl", "--builtin", "--seed", "7", "--acceleration", "10"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("No output of Bowl (End) after 1s"), std::string::npos);
}

TEST(Cli, RunBuggyBowlWithBothKeysFile) {
    const auto inputs = mbt::corpus_dir() + "/inputs/stay-then-both-keys.json";
    auto r = cli({"run", "--variant", "buggy-bowl", "--builtin", "--inputs", inputs, "--acceleration", "10"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("Bowl.x+ missed"), std::string::npos);
}

TEST(Cli, BadFlagsExitTwo) {
    EXPECT_EQ(cli({"run", "--bogus"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"run", "--builtin"}).code, 2);                                    // no program
    EXPECT_EQ(cli({"run", "--variant", "sample"}).code, 2);                          // no models
    EXPECT_EQ(cli({"run", "--variant", "sample", "--program", "x.json", "--builtin"}).code, 2);
    EXPECT_EQ(cli({"run", "--variant", "sample", "--builtin", "--report", "xml"}).code, 2);
    EXPECT_EQ(cli({"run", "--variant", "nope", "--builtin"}).code, 2);
}

TEST(Cli, FileErrorsExitThree) {
    EXPECT_EQ(cli({"run", "--program", "/nonexistent/p.json", "--builtin"}).code, 3);
    auto bad = tmp("bad.json");
    std::ofstream(bad) << "{ nope";
    EXPECT_EQ(cli({"run", "--variant", "sample", "--models", bad.string()}).code, 3);
    fs::remove(bad);
}

TEST(Cli, JsonReportIsReproducible) {
    auto out = tmp("report.json");
    std::vector<std::string> args = {"run", "--variant", "buggy-apple", "--builtin", "--seed", "3",
                                     "--acceleration", "10", "--report", "json", "--out", out.string()};
    cli(args);
    std::ifstream a(out);
    std::string first((std::istreambuf_iterator<char>(a)), {});
    cli(args);
    std::ifstream b(out);
    std::string second((std::istreambuf_iterator<char>(b)), {});
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, second);
    fs::remove(out);
}

TEST(Cli, ScriptedInputs) {
    auto models = tmp("bowl.json");
    auto all = mbt::fruit_models();
    std::ofstream(models) << mbt::models_to_json({all[0]}).dump();
    auto inputs = fs::path(mbt::corpus_dir()) / "inputs" / "stay-then-both-keys.json";
    auto r = cli({"run", "--variant", "buggy-bowl", "--models", models.string(), "--inputs", inputs.string(),
                  "--acceleration", "10"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("Bowl.x+ missed"), std::string::npos);
    // No user model and no input file: no input source.
    EXPECT_EQ(cli({"run", "--variant", "sample", "--models", models.string()}).code, 2);
    fs::remove(models);
}

TEST(Cli, Validate) {
    EXPECT_EQ(cli({"validate", "--builtin"}).code, 0);
    auto island = tmp("island.json");
    std::ofstream(island) << R"({"models": [{"id": "m", "usage": "program", "startNodeId": "a", "stopNodeIds": [],
        "stopAllNodeIds": [], "nodes": [{"id": "a"}, {"id": "b"}], "edges": []}]})";
    auto r = cli({"validate", "--models", island.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("unreachable state 'b'"), std::string::npos);
    fs::remove(island);
}

TEST(Cli, CorpusList) {
    auto r = cli({"corpus-list"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("sample\n", 0), 0u);
    EXPECT_NE(r.out.find("no-end-bubble"), std::string::npos);
}

TEST(Cli, ExperimentWritesCsvAndSummary) {
    auto out = tmp("exp.csv");
    auto r = cli({"experiment", "--builtin", "--variant", "sample", "--repetitions", "2", "--gen-repetitions", "2",
                  "--acceleration", "10", "--out", out.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    std::ifstream csv(out);
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header, "variant,arm,seed,coverage,failures");
    EXPECT_TRUE(fs::exists(out.string() + ".summary.json"));
    fs::remove(out);
    fs::remove(out.string() + ".summary.json");
}
