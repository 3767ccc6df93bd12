#pragma once

#include <cstdint>
#include <json.hpp>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mbt/corpus.hpp"
#include "mbt/report.hpp"

namespace mbt {

struct ExperimentConfig {
    std::vector<std::string> variants;  // empty: every corpus variant
    std::uint64_t first_seed = 1;
    int repetitions = 30;       // seeds per variant and arm
    int gen_repetitions = 20;   // input generations per seed (user arm)
    double acceleration = 10;
    double max_duration_ms = 40000;
    bool case_sensitive = false;
    std::optional<std::vector<Model>> models;  // default: fruit_models()
};

// (model id, message) of a failure; duplicates across reps count once.
using FailureKind = std::pair<std::string, std::string>;

// One seed of one arm: coverage and failures folded over its runs.
struct SeedOutcome {
    std::string variant;
    InputSource arm = InputSource::UserModels;
    std::uint64_t seed = 0;
    std::size_t runs = 0;
    double coverage = 0;  // fraction of blocks covered by at least one run
    std::set<FailureKind> failures;
    std::size_t contradictions = 0;

    bool operator==(const SeedOutcome&) const = default;
};

// Seed for repetition `rep` of `seed`; identical for both arms.
std::uint64_t run_seed(std::uint64_t seed, int rep);

// The user arm runs `gen_repetitions` generations; the scripted arm runs
// every scripted-suite file once.
SeedOutcome run_seed_outcome(const std::string& variant, const SpriteProgram& program,
                             const std::vector<Model>& models, InputSource arm, std::uint64_t seed,
                             const ExperimentConfig& cfg);

// Each variant x arm x seed, in that order.
std::vector<SeedOutcome> run_experiment_serial(const ExperimentConfig& cfg);
// Same result as the serial runner; runs are spread over OpenMP threads.
std::vector<SeedOutcome> run_experiment_parallel(const ExperimentConfig& cfg);

struct VariantSummary {
    std::string variant;
    std::vector<double> user_coverage;
    std::vector<double> scripted_coverage;
    std::vector<double> user_failures;
    std::vector<double> scripted_failures;
    double user_mean = 0;
    double scripted_mean = 0;
    double a12 = 0.5;      // user arm versus scripted arm, on coverage
    double p_value = 1;
    double user_failures_mean = 0;
    double scripted_failures_mean = 0;
};

struct ExperimentSummary {
    std::vector<VariantSummary> variants;
};

// Throws std::invalid_argument if the arms disagree on the variant set or a
// variant/arm has no outcomes.
ExperimentSummary aggregate_experiment(const std::vector<SeedOutcome>& outcomes);

std::string experiment_csv(const std::vector<SeedOutcome>& outcomes);
nlohmann::json summary_to_json(const ExperimentSummary& s);

}  // namespace mbt
