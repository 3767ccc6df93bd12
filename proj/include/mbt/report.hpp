#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "mbt/checks.hpp"
#include "mbt/model.hpp"

namespace mbt {

enum class InputSource { UserModels, Scripted };
const char* input_source_name(InputSource s);

struct RunConfig {
    std::uint64_t seed = 1;
    double acceleration = 1;
    double max_duration_ms = 40000;  // at acceleration 1
    InputSource input_source = InputSource::UserModels;
    bool case_sensitive = false;

    bool operator==(const RunConfig&) const = default;
};

// A lower-priority edge seen while choosing a transition. Kept in memory for
// the engine property tests; not serialized.
struct PriorityProbe {
    std::string edge_id;
    int order = 0;
    bool fired_this_step = false;
    bool enabled = false;
    bool operator==(const PriorityProbe&) const = default;
};

struct TransitionRecord {
    std::int64_t step = 0;
    std::int64_t time_ms = 0;
    std::string model_id;
    std::string edge_id;
    std::string from;
    std::string to;
    Trigger trigger = Trigger::IntraStep;
    int order = 0;
    std::vector<PriorityProbe> probes;
    bool operator==(const TransitionRecord&) const = default;
};

struct ContradictionRecord {
    std::int64_t step = 0;
    std::string model_a, edge_a, effect_a;
    std::string model_b, edge_b, effect_b;
    std::string reason;
    bool operator==(const ContradictionRecord&) const = default;
};

struct ModelCoverage {
    std::string model_id;
    std::size_t visited_states = 0;
    std::size_t total_states = 0;
    std::size_t traversed_edges = 0;
    std::size_t total_edges = 0;

    double state_ratio() const;
    double edge_ratio() const;
    bool operator==(const ModelCoverage&) const = default;
};

struct HaltRecord {
    std::int64_t step = 0;
    std::string model_id;
    Usage usage = Usage::Program;
    std::string reason;  // "stop state" or "stop-all by <model>"
    bool operator==(const HaltRecord&) const = default;
};

// Closed obligation, for window checks. Not serialized.
struct ObligationRecord {
    std::string model_id;
    std::string edge_id;
    std::string effect;
    Window window = Window::ScratchCheck;
    Status status = Status::Pending;
    std::int64_t opened_step = 0;
    std::int64_t evaluations = 0;
    std::int64_t first_eval_step = -1;
    std::int64_t last_eval_step = -1;
    bool removed = false;  // dropped as part of a contradiction
    bool operator==(const ObligationRecord&) const = default;
};

struct TestReport {
    RunConfig config;
    std::string program_name;
    std::vector<TransitionRecord> transitions;
    std::vector<Failure> failures;
    double block_coverage = 1.0;
    std::vector<bool> covered_blocks;
    std::vector<ModelCoverage> model_coverage;
    std::vector<ContradictionRecord> contradictions;
    std::vector<HaltRecord> halts;
    std::vector<std::string> model_ids;  // in processing order
    std::int64_t steps = 0;
    std::int64_t end_activation_step = -1;  // -1 if end models never started
    std::vector<std::string> diagnostics;
    std::vector<std::string> runtime_errors;
    std::vector<ObligationRecord> obligations;

    bool operator==(const TestReport&) const = default;
};

nlohmann::json report_to_json(const TestReport& r);
std::string render_tap(const TestReport& r);
std::string render_tap(const std::vector<TestReport>& runs);

}  // namespace mbt
