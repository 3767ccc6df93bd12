#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mbt/input.hpp"
#include "mbt/program.hpp"
#include "mbt/rng.hpp"

namespace mbt {

// Virtual milliseconds per VM step (about 30 fps).
inline constexpr std::int64_t kStepMs = 33;

enum class Attr { X, Y, Size, Visible, Costume };
inline constexpr std::size_t kAttrCount = 5;

const char* attr_name(Attr a);
std::optional<Attr> parse_attr(std::string_view name);

struct SpeechBubble {
    std::string text;
    std::optional<double> expires_at;  // virtual ms
    bool operator==(const SpeechBubble&) const = default;
};

struct SpriteState {
    double x = 0;
    double y = 0;
    double width = 0;
    double height = 0;
    Rgb fill;
    bool visible = true;
    double size = 100;
    int costume = 0;
    std::optional<SpeechBubble> bubble;
    std::vector<double> locals;

    // Value before the most recent change during the current step, if any.
    std::array<std::optional<double>, kAttrCount> attr_prev;
    std::vector<std::optional<double>> locals_prev;

    double attr(Attr a) const;
    bool operator==(const SpriteState&) const = default;
};

// The observable part of the VM: everything a predicate may inspect.
struct VmSnapshot {
    std::shared_ptr<const SpriteProgram> program;
    std::vector<SpriteState> sprites;
    std::vector<double> globals;
    std::vector<std::optional<double>> globals_prev;
    std::int64_t clock_ms = 0;
    std::int64_t timer_start_ms = 0;
    std::int64_t step_index = 0;
    double acceleration = 1;
    bool stopped = false;
    std::set<std::string> keys_down;
    double mouse_x = 0;
    double mouse_y = 0;
    std::optional<std::array<double, 2>> pending_click;

    // Program-perceived seconds since the last timer reset.
    double timer_seconds() const;
    bool key_down(const std::string& normalized_key) const;

    bool operator==(const VmSnapshot& o) const;
};

// Stage geometry on axis-aligned boxes. Boxes that share an edge touch.
bool boxes_touch(const SpriteState& a, const SpriteState& b);
bool touching_sprite(const VmSnapshot& s, int a, int b);
bool touching_color(const VmSnapshot& s, int sprite, const Rgb& color);
bool touching_edge(const VmSnapshot& s, int sprite);

struct StateChange {
    enum class Kind { Attr, Local, Global, Bubble, Input };
    Kind kind = Kind::Attr;
    int sprite = -1;
    int slot = -1;  // Attr index, variable index
    double old_value = 0;
    double new_value = 0;
    std::string old_text;
    std::string new_text;
    int boundary = 0;  // intra-step index; 0 is the input/expiry phase

    bool operator==(const StateChange&) const = default;
};

struct ThreadHalt {
    int sprite = 0;
    int script = 0;
    std::string reason;  // "finished", "stopScript", "stopAll" or a runtime error
    bool operator==(const ThreadHalt&) const = default;
};

struct StepTrace {
    std::int64_t step_index = 0;
    std::int64_t clock_ms = 0;  // clock at which the step executed
    std::vector<BlockId> executed;
    std::vector<StateChange> changes;
    std::vector<std::string> outputs_started;
    std::vector<std::string> outputs_removed;
    std::vector<ThreadHalt> halted;
    std::vector<std::string> runtime_errors;
    bool stop_all = false;

    bool operator==(const StepTrace&) const = default;
};

// Called at every block boundary of a step, with the changes made at it.
// Boundary 0 carries the input phase and bubble expiry.
struct Boundary {
    int index = 0;
    std::optional<BlockId> block;
    std::span<const StateChange> changes;
};
using BoundaryObserver = std::function<void(const Boundary&)>;

class VmState {
public:
    const VmSnapshot& view() const { return snap_; }
    VmSnapshot snapshot() const { return snap_; }

    // Applies `inputs`, runs every active thread until it yields and advances
    // the clock by kStepMs.
    StepTrace step(std::span<const InputAction> inputs, const BoundaryObserver& observer = {});

    std::size_t active_threads() const { return threads_.size(); }
    const std::vector<bool>& covered() const { return covered_; }
    const Rng& rng() const { return rng_; }

    bool operator==(const VmState& o) const;

private:
    friend VmState green_flag(std::shared_ptr<const SpriteProgram>, std::uint64_t, double);

    struct Frame {
        const std::vector<Block>* list = nullptr;
        std::size_t pc = 0;
        const Block* loop = nullptr;  // owning forever/repeat, or null for plain sequences
        std::int64_t remaining = 0;
        bool operator==(const Frame&) const = default;
    };
    struct Thread {
        int sprite = 0;
        int script = 0;
        std::vector<Frame> frames;
        std::optional<double> wait_until;
        bool done = false;
        bool operator==(const Thread&) const = default;
    };
    enum class RunResult { Yield, Finished, StopAll };

    void start_thread(int sprite, int script, StepTrace* trace);
    RunResult run_thread(Thread& t, StepTrace& trace, const BoundaryObserver& observer);
    void apply_inputs(std::span<const InputAction> inputs, StepTrace& trace);
    void boundary(StepTrace& trace, const BoundaryObserver& observer, std::optional<BlockId> block);
    void mark(BlockId id, StepTrace& trace);

    double eval_num(const Expr& e, int sprite);
    bool eval_bool(const Expr& e, int sprite);
    std::string eval_text(const Expr& e, int sprite);
    double* resolve_var(const std::string& name, int sprite, StateChange::Kind& kind, int& slot);

    void set_attr(int sprite, Attr a, double v, StepTrace& trace);
    void set_var(int sprite, const std::string& name, double v, StepTrace& trace);
    void set_bubble(int sprite, std::optional<SpeechBubble> bubble, StepTrace& trace);
    void record(StateChange c, StepTrace& trace);

    VmSnapshot snap_;
    std::vector<Thread> threads_;
    std::map<std::string, int> press_countdown_;
    std::vector<bool> covered_;
    std::vector<BlockId> pending_hats_;
    Rng rng_;
    int boundary_index_ = 0;
    std::size_t change_cursor_ = 0;
};

// Creates the initial state and activates every green-flag script.
VmState green_flag(std::shared_ptr<const SpriteProgram> program, std::uint64_t seed, double acceleration);

// Distinct executed block ids over the total; 1.0 for an empty program.
double block_coverage(const SpriteProgram& program, std::span<const StepTrace> history);
double block_coverage(const std::vector<bool>& covered);

}  // namespace mbt
