#include "mbt/checks.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace mbt {

namespace {

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string num_text(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Target as written, with regex slashes dropped.
std::string display(const std::string& s) { return is_regex_pattern(s) ? s.substr(1, s.size() - 2) : s; }

bool compare(double l, const std::string& op, double r) {
    if (op == "<") return l < r;
    if (op == "<=") return l <= r;
    if (op == ">") return l > r;
    if (op == ">=") return l >= r;
    return l == r;
}

bool is_global_scope(const std::string& s) { return lower(s) == "global"; }

ValueRef find_var(const SpriteProgram& p, const std::string& scope, const std::string& name, bool cs) {
    const NamePattern var(name, cs);
    if (is_global_scope(scope)) {
        for (std::size_t i = 0; i < p.globals.size(); ++i) {
            if (var.matches(p.globals[i].name)) return {ValueRef::Kind::Global, -1, static_cast<int>(i)};
        }
        return {};
    }
    const int s = NamePattern(scope, cs).resolve(p);
    if (s < 0) return {};
    const auto& vars = p.sprites[static_cast<std::size_t>(s)].variables;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (var.matches(vars[i].name)) return {ValueRef::Kind::Local, s, static_cast<int>(i)};
    }
    return {};
}

ValueRef attr_ref(int sprite, const std::string& attr) {
    const auto a = parse_attr(lower(attr));
    if (sprite < 0 || !a) return {};
    return {ValueRef::Kind::Attr, sprite, static_cast<int>(*a)};
}

bool change_style(CheckKind k) {
    return k == CheckKind::AttrChange || k == CheckKind::VarChange || k == CheckKind::Unchanged;
}

std::string delta_text(const CheckArg& a) {
    if (const auto* d = std::get_if<double>(&a)) return (*d >= 0 ? "+" : "") + num_text(*d);
    return std::get<std::string>(a);
}

}  // namespace

std::optional<double> ValueRef::read(const VmSnapshot& s) const {
    switch (kind) {
    case Kind::None: return std::nullopt;
    case Kind::Attr: return s.sprites[static_cast<std::size_t>(sprite)].attr(static_cast<Attr>(slot));
    case Kind::Local: return s.sprites[static_cast<std::size_t>(sprite)].locals[static_cast<std::size_t>(slot)];
    case Kind::Global: return s.globals[static_cast<std::size_t>(slot)];
    }
    return std::nullopt;
}

std::optional<double> ValueRef::prev(const VmSnapshot& s) const {
    switch (kind) {
    case Kind::None: return std::nullopt;
    case Kind::Attr: return s.sprites[static_cast<std::size_t>(sprite)].attr_prev[static_cast<std::size_t>(slot)];
    case Kind::Local:
        return s.sprites[static_cast<std::size_t>(sprite)].locals_prev[static_cast<std::size_t>(slot)];
    case Kind::Global: return s.globals_prev[static_cast<std::size_t>(slot)];
    }
    return std::nullopt;
}

CompiledCheck compile_check(const Check& c, const SpriteProgram& program, bool cs,
                            std::vector<std::string>* diagnostics) {
    CompiledCheck out;
    out.check = c;
    auto sprite = [&](std::size_t i) { return NamePattern(arg_text(c, i), cs).resolve(program); };
    auto missing = [&](const std::string& what) {
        out.unresolved = true;
        if (diagnostics) diagnostics->push_back("target not found: " + what + " in " + describe(c));
    };
    auto need_sprite = [&](int idx, std::size_t arg) {
        if (idx < 0) missing("sprite '" + arg_text(c, arg) + "'");
        return idx;
    };
    switch (c.kind) {
    case CheckKind::KeyDown: out.key = normalize_key(arg_text(c, 0)); break;
    case CheckKind::SpriteClicked:
    case CheckKind::TouchingEdge: out.sprite = need_sprite(sprite(0), 0); break;
    case CheckKind::SpriteTouching:
        out.sprite = need_sprite(sprite(0), 0);
        out.other = need_sprite(sprite(1), 1);
        break;
    case CheckKind::TouchingColor:
        out.sprite = need_sprite(sprite(0), 0);
        out.color = {static_cast<int>(arg_number(c, 1)), static_cast<int>(arg_number(c, 2)),
                     static_cast<int>(arg_number(c, 3))};
        break;
    case CheckKind::AttrComp:
        out.sprite = need_sprite(sprite(0), 0);
        out.value = attr_ref(out.sprite, arg_text(c, 1));
        if (out.sprite >= 0 && !out.value.resolved()) missing("attribute '" + arg_text(c, 1) + "'");
        out.op = arg_text(c, 2) == "==" ? "=" : arg_text(c, 2);
        if (c.args.size() == 6) {
            out.other = need_sprite(sprite(3), 3);
            out.other_value = attr_ref(out.other, arg_text(c, 4));
            if (out.other >= 0 && !out.other_value.resolved()) missing("attribute '" + arg_text(c, 4) + "'");
            out.number = arg_number(c, 5);
        } else {
            out.number = arg_number(c, 3);
        }
        break;
    case CheckKind::AttrChange:
        out.sprite = need_sprite(sprite(0), 0);
        out.value = attr_ref(out.sprite, arg_text(c, 1));
        if (out.sprite >= 0 && !out.value.resolved()) missing("attribute '" + arg_text(c, 1) + "'");
        out.direction = arg_text(c, 2);
        break;
    case CheckKind::VarComp:
    case CheckKind::VarChange:
        out.value = find_var(program, arg_text(c, 0), arg_text(c, 1), cs);
        if (!out.value.resolved()) missing("variable '" + arg_text(c, 1) + "'");
        if (c.kind == CheckKind::VarComp) {
            out.op = arg_text(c, 2) == "==" ? "=" : arg_text(c, 2);
            out.number = arg_number(c, 3);
        } else if (const auto* d = std::get_if<double>(&c.args[2])) {
            out.number = *d;
        } else {
            const auto& s = std::get<std::string>(c.args[2]);
            if (s == "+" || s == "-" || s == "=") out.direction = s;
            else out.number = arg_number(c, 2);
        }
        break;
    case CheckKind::Output:
    case CheckKind::NoOutput:
        out.sprite = need_sprite(sprite(0), 0);
        if (c.args.size() > 1) out.text = NamePattern(arg_text(c, 1), cs);
        break;
    case CheckKind::Unchanged: {
        const auto target = arg_text(c, 0);
        const auto name = arg_text(c, 1);
        if (is_global_scope(target)) {
            out.value = find_var(program, target, name, cs);
        } else {
            out.sprite = sprite(0);
            if (out.sprite >= 0) {
                out.value = attr_ref(out.sprite, name);
                if (!out.value.resolved()) out.value = find_var(program, target, name, cs);
                if (!out.value.resolved()) out.value = find_var(program, "global", name, cs);
            }
        }
        if (!out.value.resolved()) missing("'" + target + "." + name + "'");
        break;
    }
    case CheckKind::TimeElapsed:
    case CheckKind::TimeBetween: out.number = parse_duration_ms(c.args[0]); break;
    case CheckKind::Probability: out.number = arg_number(c, 0); break;
    case CheckKind::True: break;
    }
    return out;
}

namespace {

bool eval_base(const CompiledCheck& c, const EvalContext& ctx) {
    const VmSnapshot& s = *ctx.snap;
    if (c.unresolved) return false;
    auto change = [&]() -> std::optional<std::pair<double, double>> {
        const double cur = *c.value.read(s);
        if (ctx.baseline) return std::pair(*c.value.read(*ctx.baseline), cur);
        if (auto p = c.value.prev(s)) return std::pair(*p, cur);
        return std::nullopt;
    };
    switch (c.check.kind) {
    case CheckKind::KeyDown: return s.key_down(c.key);
    case CheckKind::SpriteClicked: {
        if (!s.pending_click) return false;
        const auto& sp = s.sprites[static_cast<std::size_t>(c.sprite)];
        return sp.visible && std::fabs((*s.pending_click)[0] - sp.x) * 2 <= sp.width &&
               std::fabs((*s.pending_click)[1] - sp.y) * 2 <= sp.height;
    }
    case CheckKind::SpriteTouching: return touching_sprite(s, c.sprite, c.other);
    case CheckKind::TouchingColor: return touching_color(s, c.sprite, c.color);
    case CheckKind::TouchingEdge: return touching_edge(s, c.sprite);
    case CheckKind::AttrComp:
    case CheckKind::VarComp: {
        const double l = *c.value.read(s);
        const double r = c.other_value.resolved() ? *c.other_value.read(s) + c.number : c.number;
        return compare(l, c.op, r);
    }
    case CheckKind::AttrChange:
    case CheckKind::VarChange: {
        const auto ch = change();
        if (c.direction == "=") return !ch || ch->first == ch->second;
        if (!ch) return false;
        const auto [base, cur] = *ch;
        if (c.direction == "+") return cur > base;
        if (c.direction == "-") return cur < base;
        return cur == base + c.number;
    }
    case CheckKind::Unchanged: {
        const auto ch = change();
        return !ch || ch->first == ch->second;
    }
    case CheckKind::Output:
    case CheckKind::NoOutput: {
        const auto& b = s.sprites[static_cast<std::size_t>(c.sprite)].bubble;
        const bool shown = b && (!c.text || c.text->matches(b->text));
        return c.check.kind == CheckKind::Output ? shown : !shown;
    }
    case CheckKind::TimeElapsed:
        return static_cast<double>(s.clock_ms) >= c.number / s.acceleration;
    case CheckKind::TimeBetween: return ctx.model_elapsed_ms >= c.number / s.acceleration;
    case CheckKind::Probability: return ctx.rng != nullptr && ctx.rng->next_double() < c.number;
    case CheckKind::True: return true;
    }
    return false;
}

}  // namespace

bool eval_condition(const CompiledCheck& c, const EvalContext& ctx) { return eval_base(c, ctx) != c.check.negated; }

bool is_time_check(const Check& c) {
    return c.kind == CheckKind::TimeElapsed || c.kind == CheckKind::TimeBetween || c.kind == CheckKind::True ||
           c.kind == CheckKind::Probability;
}

std::string check_phrase(const Check& c) {
    auto a = [&](std::size_t i) { return display(arg_text(c, i)); };
    std::string p;
    switch (c.kind) {
    case CheckKind::KeyDown: p = "Key " + a(0); break;
    case CheckKind::SpriteClicked: p = a(0) + " clicked"; break;
    case CheckKind::SpriteTouching: p = a(0) + " touching " + a(1); break;
    case CheckKind::TouchingColor: p = a(0) + " touching color (" + a(1) + "," + a(2) + "," + a(3) + ")"; break;
    case CheckKind::TouchingEdge: p = a(0) + " touching edge"; break;
    case CheckKind::AttrComp:
        p = a(0) + "." + a(1) + " " + a(2) + " ";
        if (c.args.size() == 6) {
            p += a(3) + "." + a(4);
            const double off = arg_number(c, 5);
            if (off != 0) p += (off > 0 ? "+" : "") + num_text(off);
        } else {
            p += a(3);
        }
        break;
    case CheckKind::AttrChange: p = a(0) + "." + a(1) + a(2); break;
    case CheckKind::VarComp: p = a(1) + " " + a(2) + " " + a(3); break;
    case CheckKind::VarChange: p = a(1) + delta_text(c.args[2]); break;
    case CheckKind::Output: p = "Output of " + a(0) + " (" + a(1) + ")"; break;
    case CheckKind::NoOutput: p = "No output of " + a(0) + (c.args.size() > 1 ? " (" + a(1) + ")" : ""); break;
    case CheckKind::Unchanged:
        p = (is_global_scope(arg_text(c, 0)) ? a(1) : a(0) + "." + a(1)) + " unchanged";
        break;
    case CheckKind::TimeElapsed: p = "time elapsed " + duration_text(c.args[0]); break;
    case CheckKind::TimeBetween: p = duration_text(c.args[0]) + " passed"; break;
    case CheckKind::Probability: p = "probability " + a(0); break;
    case CheckKind::True: p = "true"; break;
    }
    return c.negated ? "not " + p : p;
}

std::string effect_failure_message(const Check& effect, const Edge& edge) {
    if (!effect.negated && effect.kind == CheckKind::Unchanged) {
        const auto t = arg_text(effect, 0);
        const auto n = display(arg_text(effect, 1));
        return (is_global_scope(t) ? n : display(t) + "." + n) + " changed";
    }
    if (!effect.negated && effect.kind == CheckKind::NoOutput) {
        for (const auto& c : edge.conditions) {
            if (c.kind == CheckKind::TimeBetween && !c.negated) {
                return check_phrase(effect) + " after " + duration_text(c.args[0]);
            }
        }
    }
    return check_phrase(effect) + " missed";
}

std::string force_failure_message(const Edge& edge) {
    for (const auto& c : edge.conditions) {
        if (!is_time_check(c)) return check_phrase(c) + " missed";
    }
    return (edge.label.empty() ? edge.id : edge.label) + " missed";
}

const char* window_name(Window w) {
    switch (w) {
    case Window::ScratchCheck: return "ScratchCheck";
    case Window::ModelStepCheck: return "ModelStepCheck";
    case Window::SpeechBubbleCheck: return "SpeechBubbleCheck";
    }
    return "?";
}

Obligation open_obligation(const Check& effect, std::shared_ptr<const CompiledCheck> compiled,
                           const TriggerContext& ctx) {
    Obligation o;
    o.model_id = ctx.model_id;
    o.edge_id = ctx.edge ? ctx.edge->id : std::string();
    o.effect_index = ctx.effect_index;
    o.effect = effect;
    o.compiled = std::move(compiled);
    o.baseline = ctx.baseline;
    o.trigger = ctx.trigger;
    o.mode = effect.kind == CheckKind::Unchanged && !effect.negated ? Mode::Always : Mode::Eventually;
    o.opened_step = ctx.step;
    const bool bubble = effect.kind == CheckKind::Output || effect.kind == CheckKind::NoOutput;
    const bool intra = ctx.trigger == Trigger::IntraStep;
    o.window = bubble ? Window::SpeechBubbleCheck : intra ? Window::ScratchCheck : Window::ModelStepCheck;
    o.first_step = intra ? ctx.step : ctx.step + 1;
    o.close_step = o.first_step + (bubble ? 1 : 0);
    o.message = ctx.edge ? effect_failure_message(effect, *ctx.edge) : check_phrase(effect) + " missed";
    return o;
}

std::vector<Failure> evaluate_obligations(std::vector<Obligation>& obls, const VmSnapshot& snap,
                                          const EvalPoint& point) {
    std::vector<Failure> failures;
    auto fail = [&](Obligation& o) {
        o.status = Status::Failed;
        failures.push_back({o.model_id, o.edge_id, describe(o.effect), point.time_ms, o.message});
    };
    for (auto& o : obls) {
        if (o.status != Status::Pending || o.removed || point.step < o.first_step) continue;
        EvalContext ctx;
        ctx.snap = &snap;
        ctx.baseline = change_style(o.effect.kind) ? o.baseline.get() : nullptr;
        const bool holds = eval_condition(*o.compiled, ctx);
        ++o.evaluations;
        if (!o.first_eval_step) o.first_eval_step = point.step;
        o.last_eval_step = point.step;
        if (o.mode == Mode::Eventually && holds) {
            o.status = Status::Satisfied;
        } else if (o.mode == Mode::Always && !holds) {
            fail(o);
        } else if (point.kind == EvalPoint::Kind::StepEnd && point.step >= o.close_step) {
            if (o.mode == Mode::Eventually) fail(o);
            else o.status = Status::Satisfied;
        }
    }
    return failures;
}

}  // namespace mbt
