#include "mbt/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "mbt/program.hpp"

namespace mbt {

using nlohmann::json;

namespace {

struct CatalogEntry {
    CheckKind kind;
    const char* name;
    std::size_t min_args;
    std::size_t max_args;
};

constexpr CatalogEntry kCatalog[] = {
    {CheckKind::KeyDown, "KeyDown", 1, 1},
    {CheckKind::SpriteClicked, "SpriteClicked", 1, 1},
    {CheckKind::SpriteTouching, "SpriteTouching", 2, 2},
    {CheckKind::TouchingColor, "TouchingColor", 4, 4},
    {CheckKind::TouchingEdge, "TouchingEdge", 1, 1},
    {CheckKind::AttrComp, "AttrComp", 4, 6},
    {CheckKind::AttrChange, "AttrChange", 3, 3},
    {CheckKind::VarComp, "VarComp", 4, 4},
    {CheckKind::VarChange, "VarChange", 3, 3},
    {CheckKind::Output, "Output", 2, 2},
    {CheckKind::NoOutput, "NoOutput", 1, 2},
    {CheckKind::Unchanged, "Unchanged", 2, 2},
    {CheckKind::TimeElapsed, "TimeElapsed", 1, 1},
    {CheckKind::TimeBetween, "TimeBetween", 1, 1},
    {CheckKind::Probability, "Probability", 1, 1},
    {CheckKind::True, "True", 0, 0},
};

const CatalogEntry& entry(CheckKind k) { return kCatalog[static_cast<int>(k)]; }

const char* kUsageNames[] = {"program", "end", "user"};

std::string format_arg(const CheckArg& a) {
    if (const auto* s = std::get_if<std::string>(&a)) return *s;
    std::ostringstream os;
    os << std::get<double>(a);
    return os.str();
}

bool valid_op(const std::string& op) {
    return op == "<" || op == "<=" || op == ">" || op == ">=" || op == "=" || op == "==";
}

bool valid_direction(const std::string& d) { return d == "+" || d == "-" || d == "="; }

bool valid_delta(const CheckArg& a) {
    if (std::holds_alternative<double>(a)) return true;
    const auto& s = std::get<std::string>(a);
    if (valid_direction(s)) return true;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return !s.empty() && (s[0] == '+' || s[0] == '-') && end && *end == '\0';
}

bool is_numeric(const CheckArg& a) {
    if (std::holds_alternative<double>(a)) return true;
    const auto& s = std::get<std::string>(a);
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return !s.empty() && end && *end == '\0';
}

void check_args(const Check& c, const std::string& where) {
    const auto& e = entry(c.kind);
    const auto n = c.args.size();
    if (n < e.min_args || n > e.max_args || (c.kind == CheckKind::AttrComp && n == 5)) {
        throw ModelError(where + ": " + e.name + " takes " + std::to_string(e.min_args) +
                         (e.max_args != e.min_args ? ".." + std::to_string(e.max_args) : std::string()) +
                         " arguments, got " + std::to_string(n));
    }
    auto fail = [&](const std::string& msg) { throw ModelError(where + ": " + e.name + ": " + msg); };
    switch (c.kind) {
    case CheckKind::TouchingColor:
        for (std::size_t i = 1; i < 4; ++i) {
            if (!is_numeric(c.args[i])) fail("color components must be numbers");
        }
        break;
    case CheckKind::AttrComp:
        if (!valid_op(arg_text(c, 2))) fail("bad operator '" + arg_text(c, 2) + "'");
        if (n == 4 && !is_numeric(c.args[3])) fail("comparison value must be a number");
        if (n == 6 && !is_numeric(c.args[5])) fail("offset must be a number");
        break;
    case CheckKind::VarComp:
        if (!valid_op(arg_text(c, 2))) fail("bad operator '" + arg_text(c, 2) + "'");
        if (!is_numeric(c.args[3])) fail("comparison value must be a number");
        break;
    case CheckKind::AttrChange:
        if (!valid_direction(arg_text(c, 2))) fail("direction must be +, - or =");
        break;
    case CheckKind::VarChange:
        if (!valid_delta(c.args[2])) fail("delta must be +, -, = or a signed number");
        break;
    case CheckKind::TimeElapsed:
    case CheckKind::TimeBetween:
        try {
            if (!(parse_duration_ms(c.args[0]) >= 0)) fail("duration must be nonnegative");
        } catch (const ModelError& err) {
            fail(err.what());
        }
        break;
    case CheckKind::Probability: {
        if (!is_numeric(c.args[0])) fail("probability must be a number");
        const double p = arg_number(c, 0);
        if (!(p >= 0 && p <= 1)) fail("probability must lie in [0,1]");
        break;
    }
    default: break;
    }
}

CheckArg arg_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    throw ModelError(where + ": check arguments must be strings or numbers");
}

json arg_to_json(const CheckArg& a) {
    if (const auto* d = std::get_if<double>(&a)) return *d;
    return std::get<std::string>(a);
}

Check check_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("name") || !j["name"].is_string()) {
        throw ModelError(where + ": check needs a string 'name'");
    }
    const auto name = j["name"].get<std::string>();
    const auto kind = parse_check_kind(name);
    if (!kind) throw ModelError(where + ": unknown check '" + name + "'");
    Check c;
    c.kind = *kind;
    if (j.contains("args")) {
        if (!j["args"].is_array()) throw ModelError(where + ": 'args' must be an array");
        for (const auto& a : j["args"]) c.args.push_back(arg_from_json(a, where));
    }
    if (j.contains("negated")) {
        if (!j["negated"].is_boolean()) throw ModelError(where + ": 'negated' must be a boolean");
        c.negated = j["negated"].get<bool>();
    }
    check_args(c, where);
    return c;
}

json check_to_json(const Check& c) {
    json args = json::array();
    for (const auto& a : c.args) args.push_back(arg_to_json(a));
    return {{"name", check_name(c.kind)}, {"args", args}, {"negated", c.negated}};
}

const std::string& field_string(const json& obj, const char* field, const std::string& where) {
    auto it = obj.find(field);
    if (it == obj.end() || !it->is_string()) {
        throw ModelError(where + ": missing string field '" + field + "'");
    }
    return it->get_ref<const std::string&>();
}

std::vector<std::string> string_list(const json& obj, const char* field, const std::string& where) {
    std::vector<std::string> out;
    auto it = obj.find(field);
    if (it == obj.end()) return out;
    if (!it->is_array()) throw ModelError(where + ": '" + field + "' must be an array");
    for (const auto& v : *it) {
        if (!v.is_string()) throw ModelError(where + ": '" + field + "' entries must be strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

bool contains(const std::vector<std::string>& v, std::string_view s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

const char* usage_name(Usage u) { return kUsageNames[static_cast<int>(u)]; }

const char* check_name(CheckKind k) { return entry(k).name; }

std::optional<CheckKind> parse_check_kind(std::string_view name) {
    for (const auto& e : kCatalog) {
        if (name == e.name) return e.kind;
    }
    return std::nullopt;
}

std::string arg_text(const Check& c, std::size_t i) {
    if (i >= c.args.size()) throw ModelError(std::string(check_name(c.kind)) + ": missing argument");
    return format_arg(c.args[i]);
}

double arg_number(const Check& c, std::size_t i) {
    if (i >= c.args.size()) throw ModelError(std::string(check_name(c.kind)) + ": missing argument");
    if (const auto* d = std::get_if<double>(&c.args[i])) return *d;
    const auto& s = std::get<std::string>(c.args[i]);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || !end || *end != '\0') {
        throw ModelError(std::string(check_name(c.kind)) + ": expected a number, got '" + s + "'");
    }
    return v;
}

std::string describe(const Check& c) {
    std::string s = c.negated ? "!" : "";
    s += check_name(c.kind);
    s += "(";
    for (std::size_t i = 0; i < c.args.size(); ++i) {
        if (i) s += ", ";
        s += format_arg(c.args[i]);
    }
    return s + ")";
}

double parse_duration_ms(const CheckArg& arg) {
    if (const auto* d = std::get_if<double>(&arg)) return *d;
    const auto& s = std::get<std::string>(arg);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end == s.c_str()) throw ModelError("bad duration '" + s + "'");
    const std::string unit(end);
    if (unit.empty() || unit == "ms") return v;
    if (unit == "s") return v * 1000;
    throw ModelError("bad duration unit in '" + s + "'");
}

std::string duration_text(const CheckArg& arg) {
    if (const auto* s = std::get_if<std::string>(&arg)) {
        const auto& t = *s;
        if (!t.empty() && (std::isdigit(static_cast<unsigned char>(t.back())))) return t + "ms";
        return t;
    }
    return format_arg(arg) + "ms";
}

bool Model::has_node(std::string_view id) const {
    return std::any_of(nodes.begin(), nodes.end(), [&](const Node& n) { return n.id == id; });
}

bool Model::is_stop(std::string_view id) const { return contains(stop, id); }

bool Model::is_stop_all(std::string_view id) const { return contains(stop_all, id); }

std::vector<const Edge*> Model::outgoing(std::string_view state) const {
    std::vector<const Edge*> out;
    for (const auto& e : edges) {
        if (e.from == state) out.push_back(&e);
    }
    std::stable_sort(out.begin(), out.end(), [](const Edge* a, const Edge* b) { return a->order < b->order; });
    return out;
}

std::string to_string(const Diagnostic& d) {
    std::string s = d.severity == Diagnostic::Severity::Error ? "error: " : "warning: ";
    s += d.model_id;
    if (!d.edge_id.empty()) s += "/" + d.edge_id;
    return s + ": " + d.message;
}

std::vector<Diagnostic> validate_model(const Model& m) {
    std::vector<Diagnostic> out;
    auto error = [&](std::string edge, std::string msg) {
        out.push_back({Diagnostic::Severity::Error, m.id, std::move(edge), std::move(msg)});
    };
    std::set<std::string> ids;
    for (const auto& n : m.nodes) {
        if (!ids.insert(n.id).second) error("", "duplicate state '" + n.id + "'");
    }
    if (!m.has_node(m.start)) error("", "start state '" + m.start + "' is not a state");
    if (m.is_stop(m.start)) error("", "start state '" + m.start + "' is a stop state");
    for (const auto& s : m.stop) {
        if (!m.has_node(s)) error("", "stop state '" + s + "' is not a state");
    }
    for (const auto& s : m.stop_all) {
        if (!m.is_stop(s)) error("", "stop-all state '" + s + "' is not a stop state");
    }

    std::set<std::string> edge_ids;
    std::map<std::string, std::set<int>> orders;
    for (const auto& e : m.edges) {
        if (!edge_ids.insert(e.id).second) error(e.id, "duplicate edge id");
        if (!m.has_node(e.from)) error(e.id, "unknown source state '" + e.from + "'");
        if (!m.has_node(e.to)) error(e.id, "unknown target state '" + e.to + "'");
        if (m.is_stop(e.from)) error(e.id, "stop state '" + e.from + "' has an outgoing edge");
        if (e.order < 0) error(e.id, "negative order");
        if (!orders[e.from].insert(e.order).second) {
            error(e.id, "duplicate order " + std::to_string(e.order) + " from '" + e.from + "'");
        }
        if (e.force_test_at && !(*e.force_test_at > 0)) error(e.id, "forceTestAt must be positive");
        if (e.force_test_after && !(*e.force_test_after > 0)) error(e.id, "forceTestAfter must be positive");
        for (const auto& c : e.conditions) {
            if (c.kind == CheckKind::Probability && m.usage != Usage::User) {
                error(e.id, "Probability outside a user model");
            }
        }
        for (const auto& eff : e.effects) {
            if (const auto* c = std::get_if<Check>(&eff)) {
                if (m.usage == Usage::User) error(e.id, "predicate effect " + describe(*c) + " in user model");
                if (c->kind == CheckKind::Probability) error(e.id, "Probability used as an effect");
            } else if (m.usage != Usage::User) {
                error(e.id, "input action " + describe(std::get<InputAction>(eff)) + " in " +
                                usage_name(m.usage) + " model");
            }
        }
    }

    if (m.has_node(m.start)) {
        std::set<std::string> seen{m.start};
        std::queue<std::string> todo;
        todo.push(m.start);
        while (!todo.empty()) {
            const auto cur = todo.front();
            todo.pop();
            for (const auto& e : m.edges) {
                if (e.from == cur && seen.insert(e.to).second) todo.push(e.to);
            }
        }
        for (const auto& n : m.nodes) {
            if (!seen.count(n.id)) {
                out.push_back({Diagnostic::Severity::Warning, m.id, "", "unreachable state '" + n.id + "'"});
            }
        }
    }
    return out;
}

json input_action_to_json(const InputAction& a) {
    json args = json::array();
    switch (a.kind) {
    case InputAction::Kind::KeyDown:
    case InputAction::Kind::KeyUp: args.push_back(a.key); break;
    case InputAction::Kind::KeyPressForSteps: args = {a.key, a.steps}; break;
    case InputAction::Kind::MouseMove:
    case InputAction::Kind::MouseClick: args = {a.x, a.y}; break;
    case InputAction::Kind::ReleaseAll: break;
    }
    return {{"name", input_kind_name(a.kind)}, {"args", args}};
}

InputAction input_action_from_json(const json& j) {
    if (!j.is_object() || !j.contains("name") || !j["name"].is_string()) {
        throw ModelError("input action needs a string 'name'");
    }
    const auto name = j["name"].get<std::string>();
    const json args = j.value("args", json::array());
    if (!args.is_array()) throw ModelError(name + ": 'args' must be an array");
    auto need = [&](std::size_t n) {
        if (args.size() != n) throw ModelError(name + " takes " + std::to_string(n) + " arguments");
    };
    auto str = [&](std::size_t i) {
        if (!args[i].is_string()) throw ModelError(name + ": argument " + std::to_string(i) + " must be a string");
        return args[i].get<std::string>();
    };
    auto num = [&](std::size_t i) {
        if (!args[i].is_number()) throw ModelError(name + ": argument " + std::to_string(i) + " must be a number");
        return args[i].get<double>();
    };
    auto coord = [&](double x, double y) {
        if (x < kStageMinX || x > kStageMaxX || y < kStageMinY || y > kStageMaxY) {
            throw ModelError(name + ": coordinates outside the stage");
        }
    };
    if (name == "keyDown") { need(1); return InputAction::key_down(str(0)); }
    if (name == "keyUp") { need(1); return InputAction::key_up(str(0)); }
    if (name == "keyPressForSteps") {
        need(2);
        const double steps = num(1);
        if (steps < 1 || steps != std::floor(steps)) throw ModelError(name + ": steps must be a positive integer");
        return InputAction::key_press_for(str(0), static_cast<int>(steps));
    }
    if (name == "mouseMove" || name == "mouseClick") {
        need(2);
        const double x = num(0), y = num(1);
        coord(x, y);
        return name == "mouseMove" ? InputAction::mouse_move(x, y) : InputAction::mouse_click(x, y);
    }
    if (name == "releaseAll") { need(0); return InputAction::release_all(); }
    throw ModelError("unknown input action '" + name + "'");
}

json effect_to_json(const Effect& e) {
    if (const auto* c = std::get_if<Check>(&e)) return check_to_json(*c);
    return input_action_to_json(std::get<InputAction>(e));
}

Effect effect_from_json(const json& j) {
    if (j.is_object() && j.contains("name") && j["name"].is_string()) {
        const auto name = j["name"].get<std::string>();
        if (!name.empty() && std::islower(static_cast<unsigned char>(name[0]))) return input_action_from_json(j);
    }
    return check_from_json(j, "effect");
}

std::vector<Model> parse_models_unchecked(const json& doc) {
    if (!doc.is_object() || !doc.contains("models") || !doc["models"].is_array()) {
        throw ModelError("model document needs a 'models' array");
    }
    std::vector<Model> out;
    std::set<std::string> model_ids;
    for (const auto& jm : doc["models"]) {
        if (!jm.is_object()) throw ModelError("model entries must be objects");
        Model m;
        m.id = field_string(jm, "id", "model");
        const std::string where = "model '" + m.id + "'";
        if (!model_ids.insert(m.id).second) throw ModelError(where + ": duplicate model id");
        const auto& usage = field_string(jm, "usage", where);
        if (usage == "program") m.usage = Usage::Program;
        else if (usage == "end") m.usage = Usage::End;
        else if (usage == "user") m.usage = Usage::User;
        else throw ModelError(where + ": unknown usage '" + usage + "'");
        m.start = field_string(jm, "startNodeId", where);
        m.stop = string_list(jm, "stopNodeIds", where);
        m.stop_all = string_list(jm, "stopAllNodeIds", where);
        if (!jm.contains("nodes") || !jm["nodes"].is_array()) throw ModelError(where + ": missing 'nodes' array");
        for (const auto& jn : jm["nodes"]) {
            if (!jn.is_object()) throw ModelError(where + ": node entries must be objects");
            m.nodes.push_back({field_string(jn, "id", where), jn.value("label", std::string())});
        }
        const json edges = jm.value("edges", json::array());
        if (!edges.is_array()) throw ModelError(where + ": 'edges' must be an array");
        std::map<std::string, std::set<int>> orders;
        for (const auto& je : edges) {
            if (!je.is_object()) throw ModelError(where + ": edge entries must be objects");
            Edge e;
            e.id = field_string(je, "id", where);
            const std::string ewhere = where + " edge '" + e.id + "'";
            e.from = field_string(je, "from", ewhere);
            e.to = field_string(je, "to", ewhere);
            if (!je.contains("order") || !je["order"].is_number_integer()) {
                throw ModelError(ewhere + ": missing integer 'order'");
            }
            e.order = je["order"].get<int>();
            if (!orders[e.from].insert(e.order).second) {
                throw ModelError(ewhere + ": duplicate order " + std::to_string(e.order) + " from '" + e.from + "'");
            }
            e.label = je.value("label", std::string());
            for (const char* f : {"forceTestAt", "forceTestAfter"}) {
                if (!je.contains(f) || je[f].is_null()) continue;
                if (!je[f].is_number()) throw ModelError(ewhere + ": '" + f + "' must be a number");
                (std::string_view(f) == "forceTestAt" ? e.force_test_at : e.force_test_after) = je[f].get<double>();
            }
            for (const auto& jc : je.value("conditions", json::array())) {
                e.conditions.push_back(check_from_json(jc, ewhere));
            }
            for (const auto& jf : je.value("effects", json::array())) {
                try {
                    e.effects.push_back(effect_from_json(jf));
                } catch (const ModelError& err) {
                    throw ModelError(ewhere + ": " + err.what());
                }
            }
            m.edges.push_back(std::move(e));
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<Model> parse_models(const json& doc) {
    auto models = parse_models_unchecked(doc);
    for (const auto& m : models) {
        for (const auto& d : validate_model(m)) {
            if (d.severity == Diagnostic::Severity::Error) throw ModelError(to_string(d));
        }
    }
    return models;
}

std::vector<Model> parse_models_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ModelError(std::string("model syntax error: ") + e.what());
    }
    return parse_models(doc);
}

std::vector<Model> parse_models_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open model file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_models_text(ss.str());
}

json models_to_json(const std::vector<Model>& models) {
    json arr = json::array();
    for (const auto& m : models) {
        json nodes = json::array();
        for (const auto& n : m.nodes) nodes.push_back({{"id", n.id}, {"label", n.label}});
        json edges = json::array();
        for (const auto& e : m.edges) {
            json conds = json::array();
            for (const auto& c : e.conditions) conds.push_back(check_to_json(c));
            json effs = json::array();
            for (const auto& f : e.effects) effs.push_back(effect_to_json(f));
            json je = {{"id", e.id}, {"from", e.from}, {"to", e.to}, {"order", e.order}, {"label", e.label},
                       {"conditions", conds}, {"effects", effs}};
            if (e.force_test_at) je["forceTestAt"] = *e.force_test_at;
            if (e.force_test_after) je["forceTestAfter"] = *e.force_test_after;
            edges.push_back(std::move(je));
        }
        arr.push_back({{"id", m.id}, {"usage", usage_name(m.usage)}, {"startNodeId", m.start},
                       {"stopNodeIds", m.stop}, {"stopAllNodeIds", m.stop_all}, {"nodes", nodes},
                       {"edges", edges}});
    }
    return {{"models", arr}};
}

}  // namespace mbt
