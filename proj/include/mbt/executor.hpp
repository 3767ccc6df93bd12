#pragma once

#include <cstdint>
#include <json.hpp>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mbt/checks.hpp"
#include "mbt/contradictions.hpp"
#include "mbt/model.hpp"
#include "mbt/report.hpp"
#include "mbt/rng.hpp"
#include "mbt/vm.hpp"

namespace mbt {

struct ScriptedInput {
    std::int64_t at_step = 0;
    InputAction action;
    bool operator==(const ScriptedInput&) const = default;
};
using InputScript = std::vector<ScriptedInput>;

InputScript parse_input_script(const nlohmann::json& doc);
InputScript parse_input_script_file(const std::string& path);
nlohmann::json input_script_to_json(const InputScript& script);

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One run of a program against a set of models. The step loop is exposed in
// parts so tests can drive it; run() performs the whole thing.
class Executor {
public:
    Executor(std::shared_ptr<const SpriteProgram> program, std::vector<Model> models, RunConfig cfg,
             InputScript script = {});

    TestReport run();

    // One iteration: input phase, VM step with intra-step transitions, step
    // end evaluation, model step, contradiction scan and force-timer scan.
    void step();
    bool finished() const;

    std::vector<InputAction> model_input_phase();
    void model_step();
    std::vector<Failure> force_timer_scan();

    // Moves a cursor to `state` without logging a transition (test setup).
    void set_state(const std::string& model_id, const std::string& state);
    std::string state_of(const std::string& model_id) const;
    bool halted(const std::string& model_id) const;

    const VmState& vm() const { return vm_; }
    const TestReport& report() const { return report_; }
    std::size_t pending_obligations() const;

private:
    struct CompiledEdge {
        const Edge* edge = nullptr;
        int from = 0;
        int to = 0;
        std::vector<CompiledCheck> conditions;
        std::vector<std::shared_ptr<const CompiledCheck>> effects;  // null for input actions
    };
    struct Cursor {
        std::size_t model = 0;
        int state = 0;
        bool active = false;
        bool halted = false;
        std::int64_t last_transition_ms = 0;
        std::int64_t epoch = 0;  // number of transitions taken
        std::set<std::size_t> fired;
        std::vector<bool> visited;
        std::vector<bool> traversed;
        std::set<std::size_t> force_at_reported;
        std::set<std::pair<std::size_t, std::int64_t>> force_after_reported;
    };

    int state_index(std::size_t model, const std::string& id) const;
    Cursor& cursor(const std::string& model_id);
    const Cursor& cursor(const std::string& model_id) const;
    bool transitions_enabled(const Cursor& c) const;
    // Attempts one transition; returns the fired edge index.
    std::optional<std::size_t> try_transition(Cursor& c, Trigger trigger, std::vector<InputAction>* inputs);
    void fire(Cursor& c, std::size_t edge, Trigger trigger, std::vector<PriorityProbe> probes,
              std::vector<InputAction>* inputs);
    void open_effect(const Cursor& c, const CompiledEdge& e, std::size_t index, Trigger trigger);
    void halt(Cursor& c, const std::string& reason);
    void on_boundary(const Boundary& b);
    void evaluate(EvalPoint::Kind kind, std::int64_t time_ms);
    void contradiction_scan();
    void archive_closed();
    void remove_pair(std::size_t a, std::size_t b, const std::string& reason);
    void update_end_activation();
    void drain();
    void finalize();

    std::shared_ptr<const SpriteProgram> program_;
    std::vector<Model> models_;
    RunConfig cfg_;
    InputScript script_;
    VmState vm_;
    Rng model_rng_;
    std::vector<std::vector<CompiledEdge>> edges_;         // per model
    std::vector<std::vector<std::vector<std::size_t>>> outgoing_;  // per model, per state, by order
    std::vector<Cursor> cursors_;
    std::vector<Obligation> obligations_;
    std::shared_ptr<const VmSnapshot> step_start_;
    std::shared_ptr<const VmSnapshot> model_step_snapshot_;
    std::int64_t step_index_ = 0;
    bool draining_ = false;
    TestReport report_;
};

// Convenience wrapper around Executor::run.
TestReport run(std::shared_ptr<const SpriteProgram> program, const std::vector<Model>& models,
               const RunConfig& cfg, const InputScript& script = {});

}  // namespace mbt
