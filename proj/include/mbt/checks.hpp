#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbt/model.hpp"
#include "mbt/name_pattern.hpp"
#include "mbt/rng.hpp"
#include "mbt/vm.hpp"

namespace mbt {

// What a check reads from the VM, resolved once per run against a program.
struct ValueRef {
    enum class Kind { None, Attr, Local, Global };
    Kind kind = Kind::None;
    int sprite = -1;
    int slot = -1;

    bool resolved() const { return kind != Kind::None; }
    std::optional<double> read(const VmSnapshot& s) const;
    // Value before the most recent change this step, if it changed.
    std::optional<double> prev(const VmSnapshot& s) const;
    bool operator==(const ValueRef&) const = default;
};

struct CompiledCheck {
    Check check;
    int sprite = -1;  // primary sprite target
    int other = -1;   // second sprite (SpriteTouching, relative AttrComp)
    ValueRef value;   // attr/var of comparisons and change checks
    ValueRef other_value;
    std::string op;   // comparison operator, normalized ("==" becomes "=")
    double number = 0;  // comparison value, offset, delta, duration ms or probability
    std::string direction;  // "+", "-", "=" or "" for an exact delta
    std::string key;
    Rgb color;
    std::optional<NamePattern> text;
    bool unresolved = false;  // some target did not match; the base predicate is false
};

// Resolves targets. Unresolvable targets are reported through `diagnostics`.
CompiledCheck compile_check(const Check& c, const SpriteProgram& program, bool case_sensitive,
                            std::vector<std::string>* diagnostics = nullptr);

struct EvalContext {
    const VmSnapshot* snap = nullptr;
    // Change-style checks compare against this snapshot when set, and against
    // the value before this step's most recent change otherwise.
    const VmSnapshot* baseline = nullptr;
    double model_elapsed_ms = 0;  // since the model's last transition
    Rng* rng = nullptr;           // consumed by Probability only
};

bool eval_condition(const CompiledCheck& c, const EvalContext& ctx);

// True for checks whose truth depends on time only.
bool is_time_check(const Check& c);

// Short phrase used in failure messages, e.g. "Bowl.x+", "Points+5" or
// "Output of Bowl (End)".
std::string check_phrase(const Check& c);

// Failure message for an effect on `edge`.
std::string effect_failure_message(const Check& effect, const Edge& edge);
// Failure message for a missed force deadline on `edge`.
std::string force_failure_message(const Edge& edge);

enum class Window { ScratchCheck, ModelStepCheck, SpeechBubbleCheck };
enum class Mode { Eventually, Always };
enum class Status { Pending, Satisfied, Failed };
enum class Trigger { IntraStep, ModelStep };

const char* window_name(Window w);

struct Obligation {
    std::string model_id;
    std::string edge_id;
    std::size_t effect_index = 0;
    Check effect;
    std::shared_ptr<const CompiledCheck> compiled;
    std::shared_ptr<const VmSnapshot> baseline;
    Window window = Window::ScratchCheck;
    Mode mode = Mode::Eventually;
    Status status = Status::Pending;
    Trigger trigger = Trigger::IntraStep;
    std::int64_t opened_step = 0;
    std::int64_t first_step = 0;  // first step at which it is evaluated
    std::int64_t close_step = 0;  // closes at the end of this step
    std::int64_t evaluations = 0;
    std::optional<std::int64_t> first_eval_step;
    std::optional<std::int64_t> last_eval_step;
    std::string message;  // reported on failure
    bool removed = false;  // dropped by contradiction pruning
};

struct TriggerContext {
    std::string model_id;
    const Edge* edge = nullptr;
    std::size_t effect_index = 0;
    Trigger trigger = Trigger::IntraStep;
    std::int64_t step = 0;  // VM step during or after which the edge fired
    std::shared_ptr<const VmSnapshot> baseline;
};

Obligation open_obligation(const Check& effect, std::shared_ptr<const CompiledCheck> compiled,
                           const TriggerContext& ctx);

struct EvalPoint {
    enum class Kind { Boundary, StepEnd };
    Kind kind = Kind::Boundary;
    std::int64_t step = 0;
    std::int64_t time_ms = 0;
};

struct Failure {
    std::string model_id;
    std::string edge_id;
    std::string effect;  // describe() of the effect, or "forceTestAt"/"forceTestAfter"
    std::int64_t time_ms = 0;
    std::string message;
    bool operator==(const Failure&) const = default;
};

// Evaluates every pending obligation whose window contains `point` and
// closes those whose window ends there. Returns the failures produced.
std::vector<Failure> evaluate_obligations(std::vector<Obligation>& obls, const VmSnapshot& snap,
                                          const EvalPoint& point);

}  // namespace mbt
