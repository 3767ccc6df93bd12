#include "mbt/executor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mbt {

using nlohmann::json;

InputScript parse_input_script(const json& doc) {
    const json* list = &doc;
    if (doc.is_object() && doc.contains("inputs")) list = &doc["inputs"];
    if (!list->is_array()) throw ModelError("input script must be a list of {atStep, action}");
    InputScript out;
    for (const auto& e : *list) {
        if (!e.is_object() || !e.contains("atStep") || !e["atStep"].is_number_integer() || !e.contains("action")) {
            throw ModelError("input script entries need an integer 'atStep' and an 'action'");
        }
        const auto at = e["atStep"].get<std::int64_t>();
        if (at < 0) throw ModelError("input script: negative atStep");
        out.push_back({at, input_action_from_json(e["action"])});
    }
    return out;
}

InputScript parse_input_script_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open input script '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_input_script(json::parse(ss.str()));
    } catch (const json::parse_error& e) {
        throw ModelError("input script syntax error: " + std::string(e.what()));
    }
}

json input_script_to_json(const InputScript& script) {
    json arr = json::array();
    for (const auto& s : script) arr.push_back({{"atStep", s.at_step}, {"action", input_action_to_json(s.action)}});
    return arr;
}

Executor::Executor(std::shared_ptr<const SpriteProgram> program, std::vector<Model> models, RunConfig cfg,
                   InputScript script)
    : program_(std::move(program)), models_(std::move(models)), cfg_(cfg), script_(std::move(script)) {
    if (!program_) throw ConfigError("no program");
    if (!(cfg_.acceleration > 0)) throw ConfigError("acceleration must be positive");
    if (!(cfg_.max_duration_ms > 0)) throw ConfigError("maxDurationMs must be positive");
    vm_ = green_flag(program_, derive_seed(cfg_.seed, 0), cfg_.acceleration);
    model_rng_ = Rng(derive_seed(cfg_.seed, 1));
    report_.config = cfg_;

    std::vector<std::string> diags;
    for (std::size_t mi = 0; mi < models_.size(); ++mi) {
        const Model& m = models_[mi];
        report_.model_ids.push_back(m.id);
        std::vector<CompiledEdge> edges;
        std::vector<std::vector<std::size_t>> out(m.nodes.size());
        for (const auto& e : m.edges) {
            CompiledEdge ce;
            ce.edge = &e;
            ce.from = state_index(mi, e.from);
            ce.to = state_index(mi, e.to);
            if (ce.from < 0 || ce.to < 0) throw ConfigError("model '" + m.id + "': edge '" + e.id + "' has unknown endpoints");
            for (const auto& c : e.conditions) ce.conditions.push_back(compile_check(c, *program_, cfg_.case_sensitive, &diags));
            for (const auto& f : e.effects) {
                if (const auto* c = std::get_if<Check>(&f)) {
                    ce.effects.push_back(
                        std::make_shared<const CompiledCheck>(compile_check(*c, *program_, cfg_.case_sensitive, &diags)));
                } else {
                    ce.effects.push_back(nullptr);
                }
            }
            out[static_cast<std::size_t>(ce.from)].push_back(edges.size());
            edges.push_back(std::move(ce));
        }
        for (auto& list : out) {
            std::stable_sort(list.begin(), list.end(),
                             [&](std::size_t a, std::size_t b) { return edges[a].edge->order < edges[b].edge->order; });
        }
        edges_.push_back(std::move(edges));
        outgoing_.push_back(std::move(out));

        Cursor c;
        c.model = mi;
        c.state = state_index(mi, m.start);
        if (c.state < 0) throw ConfigError("model '" + m.id + "': unknown start state");
        c.visited.assign(m.nodes.size(), false);
        c.traversed.assign(m.edges.size(), false);
        c.active = m.usage == Usage::Program ||
                   (m.usage == Usage::User && cfg_.input_source == InputSource::UserModels);
        if (c.active) c.visited[static_cast<std::size_t>(c.state)] = true;
        cursors_.push_back(std::move(c));
    }
    for (auto& d : diags) {
        if (std::find(report_.diagnostics.begin(), report_.diagnostics.end(), d) == report_.diagnostics.end()) {
            report_.diagnostics.push_back(std::move(d));
        }
    }
    update_end_activation();
}

int Executor::state_index(std::size_t model, const std::string& id) const {
    const auto& nodes = models_[model].nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id == id) return static_cast<int>(i);
    }
    return -1;
}

Executor::Cursor& Executor::cursor(const std::string& model_id) {
    for (auto& c : cursors_) {
        if (models_[c.model].id == model_id) return c;
    }
    throw ConfigError("unknown model '" + model_id + "'");
}

const Executor::Cursor& Executor::cursor(const std::string& model_id) const {
    return const_cast<Executor*>(this)->cursor(model_id);
}

void Executor::set_state(const std::string& model_id, const std::string& state) {
    auto& c = cursor(model_id);
    const int s = state_index(c.model, state);
    if (s < 0) throw ConfigError("unknown state '" + state + "'");
    c.state = s;
    c.visited[static_cast<std::size_t>(s)] = true;
}

std::string Executor::state_of(const std::string& model_id) const {
    const auto& c = cursor(model_id);
    return models_[c.model].nodes[static_cast<std::size_t>(c.state)].id;
}

bool Executor::halted(const std::string& model_id) const { return cursor(model_id).halted; }

std::size_t Executor::pending_obligations() const {
    return static_cast<std::size_t>(std::count_if(obligations_.begin(), obligations_.end(),
                                                  [](const Obligation& o) { return o.status == Status::Pending && !o.removed; }));
}

bool Executor::transitions_enabled(const Cursor& c) const { return c.active && !c.halted && !draining_; }

std::optional<std::size_t> Executor::try_transition(Cursor& c, Trigger trigger, std::vector<InputAction>* inputs) {
    const auto& edges = edges_[c.model];
    const std::int64_t now = vm_.view().clock_ms;
    EvalContext ctx;
    ctx.snap = &vm_.view();
    ctx.model_elapsed_ms = static_cast<double>(now - c.last_transition_ms);
    ctx.rng = models_[c.model].usage == Usage::User ? &model_rng_ : nullptr;
    std::vector<PriorityProbe> probes;
    for (std::size_t ei : outgoing_[c.model][static_cast<std::size_t>(c.state)]) {
        const auto& e = edges[ei];
        if (c.fired.count(ei)) {
            probes.push_back({e.edge->id, e.edge->order, true, false});
            continue;
        }
        bool enabled = true;
        for (const auto& cond : e.conditions) {
            if (!eval_condition(cond, ctx)) {
                enabled = false;
                break;
            }
        }
        if (enabled) {
            fire(c, ei, trigger, std::move(probes), inputs);
            return ei;
        }
        probes.push_back({e.edge->id, e.edge->order, false, false});
    }
    return std::nullopt;
}

void Executor::fire(Cursor& c, std::size_t ei, Trigger trigger, std::vector<PriorityProbe> probes,
                    std::vector<InputAction>* inputs) {
    const Model& m = models_[c.model];
    const auto& e = edges_[c.model][ei];
    const std::int64_t now = vm_.view().clock_ms;
    TransitionRecord t;
    t.step = step_index_;
    t.time_ms = now;
    t.model_id = m.id;
    t.edge_id = e.edge->id;
    t.from = e.edge->from;
    t.to = e.edge->to;
    t.trigger = trigger;
    t.order = e.edge->order;
    t.probes = std::move(probes);
    report_.transitions.push_back(std::move(t));

    c.fired.insert(ei);
    c.traversed[ei] = true;
    c.visited[static_cast<std::size_t>(e.to)] = true;
    c.state = e.to;
    c.last_transition_ms = now;
    ++c.epoch;

    for (std::size_t i = 0; i < e.edge->effects.size(); ++i) {
        if (const auto* a = std::get_if<InputAction>(&e.edge->effects[i])) {
            if (inputs) inputs->push_back(*a);
        } else {
            open_effect(c, e, i, trigger);
        }
    }
    if (m.is_stop(e.edge->to)) {
        halt(c, "stop state");
        if (m.is_stop_all(e.edge->to)) {
            for (auto& o : cursors_) {
                if (&o != &c && models_[o.model].usage == m.usage && !o.halted) halt(o, "stop-all by " + m.id);
            }
        }
    }
}

void Executor::open_effect(const Cursor& c, const CompiledEdge& e, std::size_t index, Trigger trigger) {
    const Check& effect = std::get<Check>(e.edge->effects[index]);
    TriggerContext ctx;
    ctx.model_id = models_[c.model].id;
    ctx.edge = e.edge;
    ctx.effect_index = index;
    ctx.trigger = trigger;
    ctx.step = step_index_;
    if (trigger == Trigger::IntraStep) {
        ctx.baseline = step_start_;
    } else {
        if (!model_step_snapshot_) model_step_snapshot_ = std::make_shared<const VmSnapshot>(vm_.view());
        ctx.baseline = model_step_snapshot_;
    }
    Obligation o = open_obligation(effect, e.effects[index], ctx);

    // Contradictions are detected as soon as the obligation is opened.
    const PendingEffect fresh{o.model_id, o.edge_id, o.effect, o.compiled.get()};
    obligations_.push_back(std::move(o));
    const std::size_t fresh_index = obligations_.size() - 1;
    for (std::size_t i = 0; i + 1 < obligations_.size(); ++i) {
        auto& p = obligations_[i];
        if (p.status != Status::Pending || p.removed) continue;
        const PendingEffect other{p.model_id, p.edge_id, p.effect, p.compiled.get()};
        if (auto reason = contradiction_reason(other, fresh)) {
            remove_pair(i, fresh_index, *reason);
            break;
        }
    }
}

void Executor::remove_pair(std::size_t a, std::size_t b, const std::string& reason) {
    auto& oa = obligations_[a];
    auto& ob = obligations_[b];
    report_.contradictions.push_back({step_index_, oa.model_id, oa.edge_id, describe(oa.effect), ob.model_id,
                                      ob.edge_id, describe(ob.effect), reason});
    for (auto* o : {&oa, &ob}) {
        ObligationRecord r{o->model_id, o->edge_id, describe(o->effect), o->window, o->status, o->opened_step,
                           o->evaluations, o->first_eval_step.value_or(-1), o->last_eval_step.value_or(-1), true};
        report_.obligations.push_back(std::move(r));
        o->removed = true;
    }
}

void Executor::halt(Cursor& c, const std::string& reason) {
    c.halted = true;
    report_.halts.push_back({step_index_, models_[c.model].id, models_[c.model].usage, reason});
}

void Executor::update_end_activation() {
    if (report_.end_activation_step >= 0) return;
    for (const auto& c : cursors_) {
        if (models_[c.model].usage == Usage::Program && !c.halted) return;
    }
    // No program model left: end models start at the following step.
    bool any_program = false;
    for (const auto& c : cursors_) any_program |= models_[c.model].usage == Usage::Program;
    report_.end_activation_step = any_program ? step_index_ + 1 : 0;
}

std::vector<InputAction> Executor::model_input_phase() {
    std::vector<InputAction> inputs;
    for (auto& c : cursors_) {
        if (models_[c.model].usage != Usage::User || !transitions_enabled(c)) continue;
        c.fired.clear();
        try_transition(c, Trigger::ModelStep, &inputs);
    }
    return inputs;
}

void Executor::on_boundary(const Boundary& b) {
    if (b.changes.empty()) return;
    // Only program models react inside a step; end models move in model steps.
    for (auto& c : cursors_) {
        if (models_[c.model].usage != Usage::Program || !transitions_enabled(c)) continue;
        try_transition(c, Trigger::IntraStep, nullptr);
    }
    evaluate(EvalPoint::Kind::Boundary, vm_.view().clock_ms);
}

void Executor::evaluate(EvalPoint::Kind kind, std::int64_t time_ms) {
    auto failures = evaluate_obligations(obligations_, vm_.view(), {kind, step_index_, time_ms});
    for (auto& f : failures) report_.failures.push_back(std::move(f));
}

void Executor::model_step() {
    model_step_snapshot_.reset();
    for (auto& c : cursors_) {
        if (models_[c.model].usage == Usage::User || !transitions_enabled(c)) continue;
        try_transition(c, Trigger::ModelStep, nullptr);
    }
}

void Executor::contradiction_scan() {
    std::vector<std::size_t> idx;
    std::vector<PendingEffect> pending;
    for (std::size_t i = 0; i < obligations_.size(); ++i) {
        const auto& o = obligations_[i];
        if (o.status != Status::Pending || o.removed) continue;
        idx.push_back(i);
        pending.push_back({o.model_id, o.edge_id, o.effect, o.compiled.get()});
    }
    std::set<std::size_t> removed;
    for (const auto& p : detect_contradictions(pending)) {
        const auto a = idx[p.first];
        const auto b = idx[p.second];
        if (removed.count(a) || removed.count(b)) continue;
        removed.insert(a);
        removed.insert(b);
        remove_pair(a, b, p.reason);
    }
}

std::vector<Failure> Executor::force_timer_scan() {
    std::vector<Failure> out;
    const std::int64_t now = vm_.view().clock_ms;
    const double acc = cfg_.acceleration;
    for (auto& c : cursors_) {
        if (models_[c.model].usage == Usage::User || !transitions_enabled(c)) continue;
        for (std::size_t ei : outgoing_[c.model][static_cast<std::size_t>(c.state)]) {
            const auto& e = *edges_[c.model][ei].edge;
            if (e.force_test_at && !c.traversed[ei] && !c.force_at_reported.count(ei)) {
                const double deadline = *e.force_test_at / acc;
                if (static_cast<double>(now) > deadline) {
                    c.force_at_reported.insert(ei);
                    out.push_back({models_[c.model].id, e.id, "forceTestAt", std::llround(deadline),
                                   force_failure_message(e)});
                }
            }
            if (e.force_test_after && !c.force_after_reported.count({ei, c.epoch})) {
                const double deadline = static_cast<double>(c.last_transition_ms) + *e.force_test_after / acc;
                if (static_cast<double>(now) > deadline) {
                    c.force_after_reported.insert({ei, c.epoch});
                    out.push_back({models_[c.model].id, e.id, "forceTestAfter", std::llround(deadline),
                                   force_failure_message(e)});
                }
            }
        }
    }
    for (const auto& f : out) report_.failures.push_back(f);
    return out;
}

void Executor::archive_closed() {
    std::vector<Obligation> keep;
    for (auto& o : obligations_) {
        if (o.removed) continue;
        if (o.status == Status::Pending) {
            keep.push_back(std::move(o));
        } else {
            report_.obligations.push_back({o.model_id, o.edge_id, describe(o.effect), o.window, o.status,
                                           o.opened_step, o.evaluations, o.first_eval_step.value_or(-1),
                                           o.last_eval_step.value_or(-1), false});
        }
    }
    obligations_ = std::move(keep);
}

void Executor::step() {
    std::vector<InputAction> inputs;
    if (cfg_.input_source == InputSource::UserModels) {
        inputs = model_input_phase();
    } else {
        for (const auto& s : script_) {
            if (s.at_step == step_index_) inputs.push_back(s.action);
        }
    }
    for (auto& c : cursors_) {
        if (models_[c.model].usage != Usage::User) c.fired.clear();
    }
    if (report_.end_activation_step == step_index_) {
        for (auto& c : cursors_) {
            if (models_[c.model].usage == Usage::End && !c.active) {
                c.active = true;
                c.last_transition_ms = vm_.view().clock_ms;
                c.visited[static_cast<std::size_t>(c.state)] = true;
            }
        }
    }
    step_start_ = std::make_shared<const VmSnapshot>(vm_.view());
    const StepTrace trace = vm_.step(inputs, [this](const Boundary& b) { on_boundary(b); });
    for (const auto& e : trace.runtime_errors) {
        report_.runtime_errors.push_back("step " + std::to_string(trace.step_index) + ": " + e);
    }
    evaluate(EvalPoint::Kind::StepEnd, trace.clock_ms);
    if (!draining_) {
        model_step();
        contradiction_scan();
        force_timer_scan();
        update_end_activation();
    }
    archive_closed();
    ++step_index_;
    report_.steps = step_index_;
}

bool Executor::finished() const {
    if (static_cast<double>(vm_.view().clock_ms) >= cfg_.max_duration_ms / cfg_.acceleration) return true;
    for (const auto& c : cursors_) {
        const Usage u = models_[c.model].usage;
        if ((u == Usage::Program || u == Usage::End) && !c.halted) return false;
    }
    return true;
}

void Executor::drain() {
    draining_ = true;
    // Windows span at most two steps; the bound only guards against bugs.
    for (int i = 0; i < 4 && pending_obligations() > 0; ++i) step();
    draining_ = false;
}

void Executor::finalize() {
    report_.covered_blocks = vm_.covered();
    report_.block_coverage = block_coverage(report_.covered_blocks);
    report_.model_coverage.clear();
    for (const auto& c : cursors_) {
        const Model& m = models_[c.model];
        ModelCoverage mc;
        mc.model_id = m.id;
        mc.total_states = m.nodes.size();
        mc.total_edges = m.edges.size();
        mc.visited_states = static_cast<std::size_t>(std::count(c.visited.begin(), c.visited.end(), true));
        mc.traversed_edges = static_cast<std::size_t>(std::count(c.traversed.begin(), c.traversed.end(), true));
        report_.model_coverage.push_back(mc);
    }
}

TestReport Executor::run() {
    while (!finished()) step();
    drain();
    finalize();
    return report_;
}

TestReport run(std::shared_ptr<const SpriteProgram> program, const std::vector<Model>& models, const RunConfig& cfg,
               const InputScript& script) {
    return Executor(std::move(program), models, cfg, script).run();
}

}  // namespace mbt
