#include "mbt/vm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mbt {

namespace {

struct RuntimeFault : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr const char* kAttrNames[kAttrCount] = {"x", "y", "size", "visible", "costume"};

std::string format_number(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
        return std::to_string(static_cast<long long>(v));
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Keeps the sprite's box on stage; a box wider than the stage is centred.
double fence(double v, double size, double lo, double hi) {
    const double a = lo + size / 2;
    const double b = hi - size / 2;
    if (a > b) return 0;
    return std::clamp(v, a, b);
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

InputAction InputAction::key_down(std::string key) {
    return {Kind::KeyDown, normalize_key(key), 0, 0, 0};
}
InputAction InputAction::key_up(std::string key) { return {Kind::KeyUp, normalize_key(key), 0, 0, 0}; }
InputAction InputAction::key_press_for(std::string key, int steps) {
    return {Kind::KeyPressForSteps, normalize_key(key), steps, 0, 0};
}
InputAction InputAction::mouse_move(double x, double y) { return {Kind::MouseMove, {}, 0, x, y}; }
InputAction InputAction::mouse_click(double x, double y) { return {Kind::MouseClick, {}, 0, x, y}; }
InputAction InputAction::release_all() { return {Kind::ReleaseAll, {}, 0, 0, 0}; }

const char* input_kind_name(InputAction::Kind kind) {
    switch (kind) {
    case InputAction::Kind::KeyDown: return "keyDown";
    case InputAction::Kind::KeyUp: return "keyUp";
    case InputAction::Kind::KeyPressForSteps: return "keyPressForSteps";
    case InputAction::Kind::MouseMove: return "mouseMove";
    case InputAction::Kind::MouseClick: return "mouseClick";
    case InputAction::Kind::ReleaseAll: return "releaseAll";
    }
    return "?";
}

std::string describe(const InputAction& a) {
    std::string s = input_kind_name(a.kind);
    switch (a.kind) {
    case InputAction::Kind::KeyDown:
    case InputAction::Kind::KeyUp: return s + "(" + a.key + ")";
    case InputAction::Kind::KeyPressForSteps: return s + "(" + a.key + ", " + std::to_string(a.steps) + ")";
    case InputAction::Kind::MouseMove:
    case InputAction::Kind::MouseClick: return s + "(" + format_number(a.x) + ", " + format_number(a.y) + ")";
    case InputAction::Kind::ReleaseAll: return s;
    }
    return s;
}

const char* attr_name(Attr a) { return kAttrNames[static_cast<int>(a)]; }

std::optional<Attr> parse_attr(std::string_view name) {
    for (std::size_t i = 0; i < kAttrCount; ++i) {
        if (name == kAttrNames[i]) return static_cast<Attr>(i);
    }
    return std::nullopt;
}

double SpriteState::attr(Attr a) const {
    switch (a) {
    case Attr::X: return x;
    case Attr::Y: return y;
    case Attr::Size: return size;
    case Attr::Visible: return visible ? 1.0 : 0.0;
    case Attr::Costume: return costume;
    }
    return 0;
}

double VmSnapshot::timer_seconds() const {
    return static_cast<double>(clock_ms - timer_start_ms) * acceleration / 1000.0;
}

bool VmSnapshot::key_down(const std::string& k) const { return keys_down.count(k) > 0; }

bool VmSnapshot::operator==(const VmSnapshot& o) const {
    return program == o.program && sprites == o.sprites && globals == o.globals &&
           globals_prev == o.globals_prev && clock_ms == o.clock_ms &&
           timer_start_ms == o.timer_start_ms && step_index == o.step_index &&
           acceleration == o.acceleration && stopped == o.stopped && keys_down == o.keys_down &&
           mouse_x == o.mouse_x && mouse_y == o.mouse_y && pending_click == o.pending_click;
}

bool boxes_touch(const SpriteState& a, const SpriteState& b) {
    return std::fabs(a.x - b.x) * 2 <= a.width + b.width && std::fabs(a.y - b.y) * 2 <= a.height + b.height;
}

bool touching_sprite(const VmSnapshot& s, int a, int b) {
    if (a < 0 || b < 0 || a == b) return false;
    const auto& sa = s.sprites[static_cast<std::size_t>(a)];
    const auto& sb = s.sprites[static_cast<std::size_t>(b)];
    return sa.visible && sb.visible && boxes_touch(sa, sb);
}

bool touching_color(const VmSnapshot& s, int sprite, const Rgb& color) {
    if (sprite < 0) return false;
    const auto& self = s.sprites[static_cast<std::size_t>(sprite)];
    if (!self.visible) return false;
    for (std::size_t i = 0; i < s.sprites.size(); ++i) {
        if (static_cast<int>(i) == sprite) continue;
        const auto& other = s.sprites[i];
        if (other.visible && other.fill == color && boxes_touch(self, other)) return true;
    }
    return false;
}

bool touching_edge(const VmSnapshot& s, int sprite) {
    if (sprite < 0) return false;
    const auto& sp = s.sprites[static_cast<std::size_t>(sprite)];
    return sp.x - sp.width / 2 <= kStageMinX || sp.x + sp.width / 2 >= kStageMaxX ||
           sp.y - sp.height / 2 <= kStageMinY || sp.y + sp.height / 2 >= kStageMaxY;
}

bool VmState::operator==(const VmState& o) const {
    return snap_ == o.snap_ && threads_ == o.threads_ && press_countdown_ == o.press_countdown_ &&
           covered_ == o.covered_ && pending_hats_ == o.pending_hats_ && rng_ == o.rng_;
}

VmState green_flag(std::shared_ptr<const SpriteProgram> program, std::uint64_t seed, double acceleration) {
    if (!(acceleration > 0)) throw std::invalid_argument("acceleration must be positive");
    VmState vm;
    vm.rng_ = Rng(seed);
    vm.snap_.program = program;
    vm.snap_.acceleration = acceleration;
    for (const auto& def : program->sprites) {
        SpriteState s;
        s.x = fence(def.x, def.width, kStageMinX, kStageMaxX);
        s.y = fence(def.y, def.height, kStageMinY, kStageMaxY);
        s.width = def.width;
        s.height = def.height;
        s.fill = def.fill;
        s.visible = def.visible;
        for (const auto& v : def.variables) s.locals.push_back(v.value);
        s.locals_prev.assign(s.locals.size(), std::nullopt);
        vm.snap_.sprites.push_back(std::move(s));
    }
    for (const auto& g : program->globals) vm.snap_.globals.push_back(g.value);
    vm.snap_.globals_prev.assign(vm.snap_.globals.size(), std::nullopt);
    vm.covered_.assign(program->block_count(), false);
    for (std::size_t si = 0; si < program->sprites.size(); ++si) {
        const auto& scripts = program->sprites[si].scripts;
        for (std::size_t ci = 0; ci < scripts.size(); ++ci) {
            if (scripts[ci].has_hat() && scripts[ci].blocks.front().op == BlockOp::WhenGreenFlag) {
                vm.start_thread(static_cast<int>(si), static_cast<int>(ci), nullptr);
            }
        }
    }
    return vm;
}

void VmState::mark(BlockId id, StepTrace& trace) {
    trace.executed.push_back(id);
    covered_[id] = true;
}

void VmState::start_thread(int sprite, int script, StepTrace* trace) {
    const auto& s = snap_.program->sprites[static_cast<std::size_t>(sprite)].scripts[static_cast<std::size_t>(script)];
    Thread t;
    t.sprite = sprite;
    t.script = script;
    t.frames.push_back({&s.blocks, 1, nullptr, 0});
    const BlockId hat = s.blocks.front().id;
    if (trace) {
        mark(hat, *trace);
    } else {
        pending_hats_.push_back(hat);
        covered_[hat] = true;
    }
    auto pos = std::find_if(threads_.begin(), threads_.end(), [&](const Thread& o) {
        return std::pair(o.sprite, o.script) >= std::pair(sprite, script);
    });
    if (pos != threads_.end() && pos->sprite == sprite && pos->script == script) {
        *pos = std::move(t);  // restart
    } else {
        threads_.insert(pos, std::move(t));
    }
}

void VmState::record(StateChange c, StepTrace& trace) {
    c.boundary = boundary_index_;
    trace.changes.push_back(std::move(c));
}

void VmState::set_attr(int sprite, Attr a, double v, StepTrace& trace) {
    auto& s = snap_.sprites[static_cast<std::size_t>(sprite)];
    if (a == Attr::X) v = fence(v, s.width, kStageMinX, kStageMaxX);
    if (a == Attr::Y) v = fence(v, s.height, kStageMinY, kStageMaxY);
    const double old = s.attr(a);
    if (old == v) return;
    switch (a) {
    case Attr::X: s.x = v; break;
    case Attr::Y: s.y = v; break;
    case Attr::Size: s.size = v; break;
    case Attr::Visible: s.visible = v != 0; break;
    case Attr::Costume: s.costume = static_cast<int>(v); break;
    }
    s.attr_prev[static_cast<std::size_t>(a)] = old;
    record({StateChange::Kind::Attr, sprite, static_cast<int>(a), old, v, {}, {}, 0}, trace);
}

double* VmState::resolve_var(const std::string& name, int sprite, StateChange::Kind& kind, int& slot) {
    const auto& def = snap_.program->sprites[static_cast<std::size_t>(sprite)];
    for (std::size_t i = 0; i < def.variables.size(); ++i) {
        if (def.variables[i].name == name) {
            kind = StateChange::Kind::Local;
            slot = static_cast<int>(i);
            return &snap_.sprites[static_cast<std::size_t>(sprite)].locals[i];
        }
    }
    const int g = snap_.program->global_index(name);
    if (g < 0) throw RuntimeFault("unknown variable '" + name + "'");
    kind = StateChange::Kind::Global;
    slot = g;
    return &snap_.globals[static_cast<std::size_t>(g)];
}

void VmState::set_var(int sprite, const std::string& name, double v, StepTrace& trace) {
    StateChange::Kind kind;
    int slot;
    double* p = resolve_var(name, sprite, kind, slot);
    const double old = *p;
    if (old == v) return;
    *p = v;
    if (kind == StateChange::Kind::Local) {
        snap_.sprites[static_cast<std::size_t>(sprite)].locals_prev[static_cast<std::size_t>(slot)] = old;
    } else {
        snap_.globals_prev[static_cast<std::size_t>(slot)] = old;
    }
    record({kind, kind == StateChange::Kind::Local ? sprite : -1, slot, old, v, {}, {}, 0}, trace);
}

void VmState::set_bubble(int sprite, std::optional<SpeechBubble> bubble, StepTrace& trace) {
    auto& s = snap_.sprites[static_cast<std::size_t>(sprite)];
    const std::string old_text = s.bubble ? s.bubble->text : std::string();
    const std::string new_text = bubble ? bubble->text : std::string();
    const bool had = s.bubble.has_value();
    s.bubble = std::move(bubble);
    if (had && old_text == new_text && s.bubble) return;  // only the expiry changed
    if (had) trace.outputs_removed.push_back(old_text);
    if (s.bubble) trace.outputs_started.push_back(new_text);
    record({StateChange::Kind::Bubble, sprite, -1, had ? 1.0 : 0.0, s.bubble ? 1.0 : 0.0, old_text, new_text, 0},
           trace);
}

void VmState::apply_inputs(std::span<const InputAction> inputs, StepTrace& trace) {
    auto release = [&](const std::string& key) {
        if (snap_.keys_down.erase(key)) {
            record({StateChange::Kind::Input, -1, -1, 1, 0, key, key, 0}, trace);
        }
    };
    auto press = [&](const std::string& key) {
        if (snap_.keys_down.insert(key).second) {
            record({StateChange::Kind::Input, -1, -1, 0, 1, key, key, 0}, trace);
        }
    };
    for (auto it = press_countdown_.begin(); it != press_countdown_.end();) {
        if (it->second <= 0) {
            release(it->first);
            it = press_countdown_.erase(it);
        } else {
            ++it;
        }
    }
    snap_.pending_click.reset();
    for (const auto& a : inputs) {
        switch (a.kind) {
        case InputAction::Kind::KeyDown:
            press_countdown_.erase(a.key);
            press(a.key);
            break;
        case InputAction::Kind::KeyUp:
            press_countdown_.erase(a.key);
            release(a.key);
            break;
        case InputAction::Kind::KeyPressForSteps:
            press_countdown_[a.key] = std::max(1, a.steps);
            press(a.key);
            break;
        case InputAction::Kind::MouseMove:
        case InputAction::Kind::MouseClick: {
            const double x = std::clamp(a.x, kStageMinX, kStageMaxX);
            const double y = std::clamp(a.y, kStageMinY, kStageMaxY);
            if (x != snap_.mouse_x || y != snap_.mouse_y) {
                record({StateChange::Kind::Input, -1, 0, snap_.mouse_x, x, "mouse", "mouse", 0}, trace);
                snap_.mouse_x = x;
                snap_.mouse_y = y;
            }
            if (a.kind == InputAction::Kind::MouseClick) {
                snap_.pending_click = std::array<double, 2>{x, y};
                record({StateChange::Kind::Input, -1, 1, 0, 1, "click", "click", 0}, trace);
            }
            break;
        }
        case InputAction::Kind::ReleaseAll: {
            press_countdown_.clear();
            const auto keys = snap_.keys_down;
            for (const auto& k : keys) release(k);
            break;
        }
        }
    }
}

void VmState::boundary(StepTrace& trace, const BoundaryObserver& observer, std::optional<BlockId> block) {
    if (observer) {
        Boundary b;
        b.index = boundary_index_;
        b.block = block;
        b.changes = std::span<const StateChange>(trace.changes).subspan(change_cursor_);
        observer(b);
    }
    change_cursor_ = trace.changes.size();
    ++boundary_index_;
}

StepTrace VmState::step(std::span<const InputAction> inputs, const BoundaryObserver& observer) {
    StepTrace trace;
    trace.step_index = snap_.step_index;
    trace.clock_ms = snap_.clock_ms;
    boundary_index_ = 0;
    change_cursor_ = 0;
    for (auto& s : snap_.sprites) {
        s.attr_prev.fill(std::nullopt);
        std::fill(s.locals_prev.begin(), s.locals_prev.end(), std::nullopt);
    }
    std::fill(snap_.globals_prev.begin(), snap_.globals_prev.end(), std::nullopt);
    trace.executed = std::move(pending_hats_);
    pending_hats_.clear();

    const auto keys_before = snap_.keys_down;
    apply_inputs(inputs, trace);

    if (!snap_.stopped) {
        for (std::size_t i = 0; i < snap_.sprites.size(); ++i) {
            const auto& b = snap_.sprites[i].bubble;
            if (b && b->expires_at && *b->expires_at <= static_cast<double>(snap_.clock_ms)) {
                set_bubble(static_cast<int>(i), std::nullopt, trace);
            }
        }
    }
    boundary(trace, observer, std::nullopt);

    if (!snap_.stopped) {
        for (const auto& key : snap_.keys_down) {
            if (keys_before.count(key)) continue;
            for (std::size_t si = 0; si < snap_.program->sprites.size(); ++si) {
                const auto& scripts = snap_.program->sprites[si].scripts;
                for (std::size_t ci = 0; ci < scripts.size(); ++ci) {
                    const auto& s = scripts[ci];
                    if (s.has_hat() && s.blocks.front().op == BlockOp::WhenKeyPressed && s.blocks.front().key == key) {
                        start_thread(static_cast<int>(si), static_cast<int>(ci), &trace);
                    }
                }
            }
        }
        for (std::size_t i = 0; i < threads_.size(); ++i) {
            auto& t = threads_[i];
            RunResult r;
            try {
                r = run_thread(t, trace, observer);
            } catch (const RuntimeFault& e) {
                t.done = true;
                trace.runtime_errors.push_back(e.what());
                trace.halted.push_back({t.sprite, t.script, e.what()});
                continue;
            }
            if (r == RunResult::StopAll) {
                for (const auto& o : threads_) trace.halted.push_back({o.sprite, o.script, "stopAll"});
                threads_.clear();
                snap_.stopped = true;
                trace.stop_all = true;
                break;
            }
        }
        std::erase_if(threads_, [](const Thread& t) { return t.done; });
    }

    for (auto& [key, n] : press_countdown_) --n;
    snap_.clock_ms += kStepMs;
    ++snap_.step_index;
    return trace;
}

VmState::RunResult VmState::run_thread(Thread& t, StepTrace& trace, const BoundaryObserver& observer) {
    if (t.wait_until) {
        if (static_cast<double>(snap_.clock_ms) < *t.wait_until) return RunResult::Yield;
        t.wait_until.reset();
    }
    const double ms_per_second = 1000.0 / snap_.acceleration;
    const int sp = t.sprite;
    const auto& self = [&]() -> const SpriteState& { return snap_.sprites[static_cast<std::size_t>(sp)]; };
    while (true) {
        if (t.frames.empty()) {
            t.done = true;
            trace.halted.push_back({t.sprite, t.script, "finished"});
            return RunResult::Finished;
        }
        Frame& f = t.frames.back();
        if (f.pc >= f.list->size()) {
            if (f.loop == nullptr) {
                t.frames.pop_back();
                continue;
            }
            if (f.loop->op == BlockOp::Forever) {
                f.pc = 0;
                return RunResult::Yield;
            }
            if (--f.remaining <= 0) {
                t.frames.pop_back();
            } else {
                f.pc = 0;
            }
            return RunResult::Yield;
        }
        const Block& b = (*f.list)[f.pc++];
        mark(b.id, trace);
        switch (b.op) {
        case BlockOp::Forever:
            t.frames.push_back({&b.body, 0, &b, 0});
            continue;
        case BlockOp::Repeat: {
            const auto n = static_cast<std::int64_t>(std::llround(eval_num(b.args[0], sp)));
            if (n > 0) t.frames.push_back({&b.body, 0, &b, n});
            continue;
        }
        case BlockOp::If:
            if (eval_bool(b.args[0], sp)) t.frames.push_back({&b.body, 0, nullptr, 0});
            continue;
        case BlockOp::IfElse:
            t.frames.push_back({eval_bool(b.args[0], sp) ? &b.body : &b.else_body, 0, nullptr, 0});
            continue;
        case BlockOp::WaitSeconds:
            t.wait_until = static_cast<double>(snap_.clock_ms) + eval_num(b.args[0], sp) * ms_per_second;
            boundary(trace, observer, b.id);
            return RunResult::Yield;
        case BlockOp::SetX: set_attr(sp, Attr::X, eval_num(b.args[0], sp), trace); break;
        case BlockOp::SetY: set_attr(sp, Attr::Y, eval_num(b.args[0], sp), trace); break;
        case BlockOp::ChangeX: set_attr(sp, Attr::X, self().x + eval_num(b.args[0], sp), trace); break;
        case BlockOp::ChangeY: set_attr(sp, Attr::Y, self().y + eval_num(b.args[0], sp), trace); break;
        case BlockOp::GoToXY: {
            const double x = eval_num(b.args[0], sp);
            const double y = eval_num(b.args[1], sp);
            set_attr(sp, Attr::X, x, trace);
            set_attr(sp, Attr::Y, y, trace);
            break;
        }
        case BlockOp::Say:
            set_bubble(sp, SpeechBubble{eval_text(b.args[0], sp), std::nullopt}, trace);
            break;
        case BlockOp::SayForSeconds: {
            const std::string text = eval_text(b.args[0], sp);
            const double until = static_cast<double>(snap_.clock_ms) + eval_num(b.args[1], sp) * ms_per_second;
            set_bubble(sp, SpeechBubble{text, until}, trace);
            t.wait_until = until;
            boundary(trace, observer, b.id);
            return RunResult::Yield;
        }
        case BlockOp::SetVar: set_var(sp, b.var, eval_num(b.args[0], sp), trace); break;
        case BlockOp::ChangeVar: {
            StateChange::Kind kind;
            int slot;
            const double cur = *resolve_var(b.var, sp, kind, slot);
            set_var(sp, b.var, cur + eval_num(b.args[0], sp), trace);
            break;
        }
        case BlockOp::Show: set_attr(sp, Attr::Visible, 1, trace); break;
        case BlockOp::Hide: set_attr(sp, Attr::Visible, 0, trace); break;
        case BlockOp::ResetTimer: snap_.timer_start_ms = snap_.clock_ms; break;
        case BlockOp::StopAll:
            boundary(trace, observer, b.id);
            return RunResult::StopAll;
        case BlockOp::StopScript:
            t.done = true;
            trace.halted.push_back({t.sprite, t.script, "stopScript"});
            boundary(trace, observer, b.id);
            return RunResult::Finished;
        case BlockOp::WhenGreenFlag:
        case BlockOp::WhenKeyPressed:
            break;
        }
        boundary(trace, observer, b.id);
    }
}

double VmState::eval_num(const Expr& e, int sprite) {
    switch (e.op) {
    case ExprOp::Num: return e.number;
    case ExprOp::Str: {
        char* end = nullptr;
        const double v = std::strtod(e.text.c_str(), &end);
        return end && *end == '\0' && !e.text.empty() ? v : 0.0;
    }
    case ExprOp::Var: {
        StateChange::Kind kind;
        int slot;
        return *resolve_var(e.text, sprite, kind, slot);
    }
    case ExprOp::Timer: return snap_.timer_seconds();
    case ExprOp::PickRandom: {
        double lo = eval_num(e.args[0], sprite);
        double hi = eval_num(e.args[1], sprite);
        if (lo > hi) std::swap(lo, hi);
        if (lo == std::floor(lo) && hi == std::floor(hi)) {
            return static_cast<double>(rng_.next_int(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
        }
        return lo + rng_.next_double() * (hi - lo);
    }
    case ExprOp::MouseX: return snap_.mouse_x;
    case ExprOp::MouseY: return snap_.mouse_y;
    case ExprOp::Add: return eval_num(e.args[0], sprite) + eval_num(e.args[1], sprite);
    case ExprOp::Sub: return eval_num(e.args[0], sprite) - eval_num(e.args[1], sprite);
    case ExprOp::Mul: return eval_num(e.args[0], sprite) * eval_num(e.args[1], sprite);
    case ExprOp::Div: {
        const double a = eval_num(e.args[0], sprite);
        const double b = eval_num(e.args[1], sprite);
        if (b == 0) throw RuntimeFault("division by zero");
        return a / b;
    }
    default: return eval_bool(e, sprite) ? 1.0 : 0.0;
    }
}

bool VmState::eval_bool(const Expr& e, int sprite) {
    switch (e.op) {
    case ExprOp::KeyPressed: return snap_.key_down(e.text);
    case ExprOp::TouchingSprite: return touching_sprite(snap_, sprite, snap_.program->sprite_index(e.text));
    case ExprOp::TouchingColor: return touching_color(snap_, sprite, e.color);
    case ExprOp::Lt: return eval_num(e.args[0], sprite) < eval_num(e.args[1], sprite);
    case ExprOp::Gt: return eval_num(e.args[0], sprite) > eval_num(e.args[1], sprite);
    case ExprOp::Eq:
        if (expr_type(e.args[0]) == ValueType::Text || expr_type(e.args[1]) == ValueType::Text) {
            return lower(eval_text(e.args[0], sprite)) == lower(eval_text(e.args[1], sprite));
        }
        return eval_num(e.args[0], sprite) == eval_num(e.args[1], sprite);
    case ExprOp::And: return eval_bool(e.args[0], sprite) && eval_bool(e.args[1], sprite);
    case ExprOp::Or: return eval_bool(e.args[0], sprite) || eval_bool(e.args[1], sprite);
    case ExprOp::Not: return !eval_bool(e.args[0], sprite);
    default: return eval_num(e, sprite) != 0;
    }
}

std::string VmState::eval_text(const Expr& e, int sprite) {
    if (e.op == ExprOp::Str) return e.text;
    return format_number(eval_num(e, sprite));
}

double block_coverage(const std::vector<bool>& covered) {
    if (covered.empty()) return 1.0;
    const auto n = std::count(covered.begin(), covered.end(), true);
    return static_cast<double>(n) / static_cast<double>(covered.size());
}

double block_coverage(const SpriteProgram& program, std::span<const StepTrace> history) {
    std::vector<bool> covered(program.block_count(), false);
    for (const auto& t : history) {
        for (BlockId id : t.executed) {
            if (id < covered.size()) covered[id] = true;
        }
    }
    return block_coverage(covered);
}

}  // namespace mbt
