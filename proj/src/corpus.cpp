#include "mbt/corpus.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#ifndef MBT_DEFAULT_CORPUS_DIR
#define MBT_DEFAULT_CORPUS_DIR "corpus"
#endif

namespace mbt {

using nlohmann::json;

namespace {

struct VariantFlags {
    bool right_handler = true;
    bool right_hatless = false;
    enum class EndBubble { Timed, Forever, None } end_bubble = EndBubble::Timed;
    double end_bubble_secs = 1;
    bool end_stop = true;
    bool apple_points = true;
    double apple_delta = 5;
    double over_secs = 1;
    bool red_stop = true;
    bool catch_respawn = true;
    bool fixed_position = false;
    double respawn_y = 170;
};

VariantFlags flags_for(const std::string& id) {
    VariantFlags f;
    if (id == "sample") return f;
    if (id == "buggy-bowl") {
        f.right_handler = false;
        f.end_bubble_secs = 2;
    } else if (id == "buggy-apple") {
        f.apple_points = false;
        f.over_secs = 2;
    } else if (id == "dead-code") {
        f.right_handler = false;
        f.right_hatless = true;
    } else if (id == "wrong-respawn") {
        f.respawn_y = 150;
    } else if (id == "no-stop-on-red") {
        f.red_stop = false;
        f.catch_respawn = false;
    } else if (id == "fixed-fruit-position") {
        f.fixed_position = true;
        f.respawn_y = 160;
    } else if (id == "points-wrong-delta") {
        f.apple_delta = 4;
    } else if (id == "bubble-never-removed") {
        f.end_bubble = VariantFlags::EndBubble::Forever;
    } else if (id == "non-halting-after-end") {
        f.end_stop = false;
    } else if (id == "no-end-bubble") {
        f.end_bubble = VariantFlags::EndBubble::None;
    } else {
        throw std::invalid_argument("unknown variant '" + id + "'");
    }
    return f;
}

SpriteProgram build(const VariantFlags& f) {
    using namespace dsl;
    SpriteProgram p;
    p.globals = {{"Points", 0}, {"Time", 30}};

    auto respawn = [&](double y) {
        return f.fixed_position ? go_to(num(0), num(y)) : go_to(pick_random(num(-200), num(200)), num(y));
    };

    SpriteDef bowl{"Bowl", 0, -140, 80, 30, {139, 69, 19}, true, {}, {}};
    std::vector<Block> moves = {if_(key_pressed("left"), {change_x(num(-10))})};
    if (f.right_handler) moves.push_back(if_(key_pressed("right"), {change_x(num(10))}));
    bowl.scripts.push_back({{when_green_flag(), go_to(num(0), num(-140)), forever(moves)}});
    std::vector<Block> end = {when_green_flag(), wait(num(30))};
    switch (f.end_bubble) {
    case VariantFlags::EndBubble::Timed: end.push_back(say_for(str("Ende!"), num(f.end_bubble_secs))); break;
    case VariantFlags::EndBubble::Forever:
        end.push_back(say(str("Ende!")));
        end.push_back(wait(num(1)));
        break;
    case VariantFlags::EndBubble::None: break;
    }
    if (f.end_stop) end.push_back(stop_all());
    bowl.scripts.push_back({end});
    bowl.scripts.push_back({{when_green_flag(), set_var("Time", num(30)),
                             repeat(num(30), {wait(num(1)), change_var("Time", num(-1))})}});
    if (f.right_hatless) bowl.scripts.push_back({{forever({if_(key_pressed("right"), {change_x(num(10))})})}});
    p.sprites.push_back(bowl);

    SpriteDef apple{"Apple", 0, 170, 30, 20, {200, 30, 30}, true, {}, {}};
    std::vector<Block> caught;
    if (f.apple_points) caught.push_back(change_var("Points", num(f.apple_delta)));
    if (f.catch_respawn) caught.push_back(respawn(f.respawn_y));
    std::vector<Block> over = {say_for(str("Game over!"), num(f.over_secs))};
    if (f.red_stop) over.push_back(stop_all());
    apple.scripts.push_back({{when_green_flag(), set_var("Points", num(0)), go_to(num(0), num(170)),
                              forever({change_y(num(-5)), if_(touching("Bowl"), caught),
                                       if_(touching_color(kRedBar), over)})}});
    p.sprites.push_back(apple);

    SpriteDef bananas{"Bananas", 0, 170, 30, 20, {240, 220, 60}, true, {}, {}};
    const double by = f.fixed_position ? 160 : 170;
    bananas.scripts.push_back(
        {{when_green_flag(), go_to(num(0), num(170)),
          forever({change_y(num(-6)), if_(touching("Bowl"), {change_var("Points", num(8)), respawn(by)}),
                   if_(touching_color(kRedBar), {change_var("Points", num(-8)), respawn(by)})})}});
    p.sprites.push_back(bananas);

    SpriteDef line{"Line", 0, -175, 480, 10, kRedBar, true, {}, {}};
    line.scripts.push_back({{when_green_flag(), go_to(num(0), num(-175))}});
    p.sprites.push_back(line);

    finalize(p);
    return p;
}

// Model construction helpers.

Check chk(CheckKind k, std::vector<CheckArg> args = {}, bool negated = false) { return {k, std::move(args), negated}; }

Check neg(Check c) {
    c.negated = !c.negated;
    return c;
}

Edge edge(std::string id, std::string from, std::string to, int order, std::vector<Check> conds,
          std::vector<Effect> effects = {}, std::string label = {}) {
    Edge e;
    e.id = std::move(id);
    e.from = std::move(from);
    e.to = std::move(to);
    e.order = order;
    e.label = std::move(label);
    e.conditions = std::move(conds);
    e.effects = std::move(effects);
    return e;
}

Model model(std::string id, Usage usage, std::vector<std::string> nodes, std::string start,
            std::vector<std::string> stop, std::vector<std::string> stop_all, std::vector<Edge> edges) {
    Model m;
    m.id = std::move(id);
    m.usage = usage;
    for (auto& n : nodes) m.nodes.push_back({n, n});
    m.start = std::move(start);
    m.stop = std::move(stop);
    m.stop_all = std::move(stop_all);
    m.edges = std::move(edges);
    return m;
}

Check truth() { return chk(CheckKind::True); }
Check red(const std::string& s) { return chk(CheckKind::TouchingColor, {s, 255.0, 0.0, 0.0}); }
Check attr(const std::string& s, const std::string& a, const std::string& op, double v) {
    return chk(CheckKind::AttrComp, {s, a, op, v});
}
Check var_change(const std::string& v, CheckArg delta) { return chk(CheckKind::VarChange, {"global", v, delta}); }

Model bowl_model() {
    auto left = chk(CheckKind::KeyDown, {"left"});
    auto right = chk(CheckKind::KeyDown, {"right"});
    auto at_edge = chk(CheckKind::TouchingEdge, {"Bowl"});
    auto text = edge("start-text", "start", "text", 0, {chk(CheckKind::Output, {"Bowl", "/End/"})}, {}, "bubble");
    text.force_test_at = 31000;
    return model("bowl", Usage::Program, {"init", "start", "text", "end"}, "init", {"end"}, {"end"},
                 {edge("init-start", "init", "start", 0, {truth()}),
                  text,
                  edge("left", "start", "start", 1, {left, neg(at_edge)},
                       {chk(CheckKind::AttrChange, {"Bowl", "x", "-"})}, "Key Left"),
                  edge("right", "start", "start", 2, {right, neg(at_edge)},
                       {chk(CheckKind::AttrChange, {"Bowl", "x", "+"})}, "Key Right"),
                  edge("idle", "start", "start", 3, {neg(left), neg(right)},
                       {chk(CheckKind::Unchanged, {"Bowl", "x"})}, "no key"),
                  edge("text-end", "text", "end", 0, {chk(CheckKind::TimeBetween, {"1s"})},
                       {chk(CheckKind::NoOutput, {"Bowl", "/End/"})})});
}

Model apple_model() {
    auto to_points = edge("bowl-points", "bowl", "points", 0, {var_change("Points", "+5")});
    to_points.force_test_after = 1500;
    return model("apple", Usage::Program, {"init", "start", "bowl", "points", "red", "end"}, "init", {"end"},
                 {"end"},
                 {edge("init-start", "init", "start", 0, {truth()}),
                  edge("start-bowl", "start", "bowl", 0, {chk(CheckKind::SpriteTouching, {"/(Apple|Apfel)/", "Bowl"})}),
                  edge("start-red", "start", "red", 1, {red("apple")}, {chk(CheckKind::Output, {"apple", "/over/"})}),
                  to_points,
                  edge("points-start", "points", "start", 0, {attr("apple", "y", ">", 100)}),
                  edge("red-end", "red", "end", 0, {chk(CheckKind::TimeBetween, {1000.0})},
                       {chk(CheckKind::NoOutput, {"apple", "/over/"})})});
}

Model bananas_model() {
    auto plus = edge("bowl-plus", "bowl", "plus", 0, {var_change("Points", "+8")});
    plus.force_test_after = 1500;
    auto minus = edge("red-minus", "red", "minus", 0, {var_change("Points", "-8")});
    minus.force_test_after = 1500;
    return model("bananas", Usage::Program, {"init", "start", "bowl", "plus", "red", "minus"}, "init", {}, {},
                 {edge("init-start", "init", "start", 0, {truth()}),
                  edge("start-bowl", "start", "bowl", 0, {chk(CheckKind::SpriteTouching, {"/Banan/", "Bowl"})}),
                  edge("start-red", "start", "red", 1, {red("/Banan/")}), plus,
                  edge("plus-start", "plus", "start", 0, {attr("/Banan/", "y", ">", 100)}), minus,
                  edge("minus-start", "minus", "start", 0, {attr("/Banan/", "y", ">", 100)})});
}

// A sprite must be back at y = 170 after being caught (strict respawn check).
Model respawn_model(const std::string& id, const std::string& sprite, bool on_red) {
    std::vector<Edge> edges = {
        edge("init-start", "init", "start", 0, {truth()}),
        edge("caught", "start", "hit", 0, {chk(CheckKind::SpriteTouching, {sprite, "Bowl"})}),
        edge("respawned", "hit", "start", 0, {attr(sprite, "y", ">", 100)}, {attr(sprite, "y", "=", 170)}),
    };
    if (on_red) edges.push_back(edge("lost", "start", "hit", 1, {red(sprite)}));
    return model(id, Usage::Program, {"init", "start", "hit"}, "init", {}, {}, std::move(edges));
}

// init --True--> done, checking `effects` once right after the green flag.
Model init_model(const std::string& id, std::vector<Effect> effects) {
    return model(id, Usage::Program, {"init", "done"}, "init", {"done"}, {},
                 {edge("check", "init", "done", 0, {truth()}, std::move(effects))});
}

// A single always-true self loop checking `effects` at every step.
Model loop_model(const std::string& id, std::vector<Effect> effects) {
    return model(id, Usage::Program, {"watch"}, "watch", {}, {},
                 {edge("loop", "watch", "watch", 0, {truth()}, std::move(effects))});
}

Model end_model() {
    std::vector<Effect> frozen;
    for (const char* s : {"Bowl", "Apple", "Bananas"}) {
        frozen.push_back(chk(CheckKind::Unchanged, {s, "x"}));
        frozen.push_back(chk(CheckKind::Unchanged, {s, "y"}));
    }
    frozen.push_back(chk(CheckKind::Unchanged, {"global", "Points"}));
    frozen.push_back(chk(CheckKind::Unchanged, {"global", "Time"}));
    return model("end", Usage::End, {"init", "start", "stop"}, "init", {"stop"}, {},
                 {edge("init-start", "init", "start", 0, {truth()}),
                  // The frozen loop resets the model clock, so the end is fixed on the program clock.
                  edge("done", "start", "stop", 0, {chk(CheckKind::TimeElapsed, {34000.0})}),
                  edge("frozen", "start", "start", 1, {truth()}, std::move(frozen))});
}

Model user_model() {
    auto prob = [](double p) { return chk(CheckKind::Probability, {p}); };
    auto left = std::vector<Effect>{InputAction::key_up("right"), InputAction::key_down("left")};
    auto right = std::vector<Effect>{InputAction::key_up("left"), InputAction::key_down("right")};
    auto chase = [&](const std::string& state, const std::string& fruit, int first_order) {
        return std::vector<Edge>{
            edge(state + "-left", state, state, first_order, {chk(CheckKind::AttrComp, {fruit, "x", "<=", "Bowl", "x", -10.0})},
                 left),
            edge(state + "-right", state, state, first_order + 1,
                 {chk(CheckKind::AttrComp, {fruit, "x", ">=", "Bowl", "x", 10.0})}, right),
            edge(state + "-stop", state, state, first_order + 2, {truth()}, {InputAction::release_all()}),
        };
    };
    // Overall choice: dontMove 0.1, dodge 0.3, onlyApple 0.3, fruits 0.3.
    std::vector<Edge> edges = {
        edge("pick-dontMove", "start", "dontMove", 0, {prob(0.1)}),
        edge("pick-dodge", "start", "dodge", 1, {prob(0.3 / 0.9)}),
        edge("pick-onlyApple", "start", "onlyApple", 2, {prob(0.5)}),
        edge("pick-fruits", "start", "fruits", 3, {truth()}),
        edge("dodge-left", "dodge", "dodge", 0, {chk(CheckKind::AttrComp, {"Apple", "x", ">=", "Bowl", "x", 0.0})}, left),
        edge("dodge-right", "dodge", "dodge", 1, {truth()}, right),
        edge("fruits-apple", "fruits", "chaseApple", 0, {prob(0.5)}),
        edge("fruits-bananas", "fruits", "chaseBananas", 1, {truth()}),
        edge("apple-respawned", "chaseApple", "fruits", 0, {chk(CheckKind::AttrChange, {"Apple", "y", "+"})},
             {InputAction::release_all()}),
        edge("bananas-respawned", "chaseBananas", "fruits", 0, {chk(CheckKind::AttrChange, {"Bananas", "y", "+"})},
             {InputAction::release_all()}),
    };
    for (auto& e : chase("onlyApple", "Apple", 0)) edges.push_back(std::move(e));
    for (auto& e : chase("chaseApple", "Apple", 1)) edges.push_back(std::move(e));
    for (auto& e : chase("chaseBananas", "Bananas", 1)) edges.push_back(std::move(e));
    return model("fruit-player", Usage::User,
                 {"start", "dontMove", "dodge", "onlyApple", "fruits", "chaseApple", "chaseBananas"}, "start", {}, {},
                 std::move(edges));
}

json variant_to_json(const VariantDef& v) {
    return {{"id", v.id}, {"program", "programs/" + v.id + ".json"}, {"expectedFailures", v.expected_failures},
            {"notes", v.notes}};
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

}  // namespace

std::vector<std::string> variant_ids() {
    return {"sample",         "buggy-bowl",          "buggy-apple",          "dead-code",
            "wrong-respawn",  "no-stop-on-red",      "fixed-fruit-position", "points-wrong-delta",
            "bubble-never-removed", "non-halting-after-end", "no-end-bubble"};
}

SpriteProgram build_fruit_catcher(const std::string& variant) { return build(flags_for(variant)); }

std::vector<Model> fruit_models() {
    std::vector<Model> m;
    m.push_back(bowl_model());
    m.push_back(apple_model());
    m.push_back(bananas_model());
    m.push_back(respawn_model("apple-respawn-170", "Apple", false));
    m.push_back(respawn_model("bananas-respawn-170", "Bananas", true));
    m.push_back(init_model("bowl-init-y", {attr("Bowl", "y", "=", -140)}));
    m.push_back(init_model("points-init", {chk(CheckKind::VarComp, {"global", "Points", "=", 0.0})}));
    m.push_back(init_model("time-init", {chk(CheckKind::VarComp, {"global", "Time", "=", 30.0})}));
    m.push_back(model("time-countdown", Usage::Program, {"count"}, "count", {}, {},
                      {edge("tick", "count", "count", 0, {var_change("Time", "-")},
                            {var_change("Time", "-1"), chk(CheckKind::VarComp, {"global", "Time", ">=", 0.0})})}));
    m.push_back(loop_model("bowl-horizontal-only", {attr("Bowl", "y", "=", -140)}));
    m.push_back(loop_model("bowl-clamp", {attr("Bowl", "x", ">=", -200), attr("Bowl", "x", "<=", 200)}));
    m.push_back(loop_model("apple-in-stage", {attr("Apple", "x", ">=", -200), attr("Apple", "x", "<=", 200)}));
    m.push_back(loop_model("bananas-in-stage", {attr("Bananas", "x", ">=", -200), attr("Bananas", "x", "<=", 200)}));
    m.push_back(loop_model("apple-visible", {attr("Apple", "visible", "=", 1)}));
    m.push_back(loop_model("bananas-visible", {attr("Bananas", "visible", "=", 1)}));
    m.push_back(loop_model("bowl-visible", {attr("Bowl", "visible", "=", 1)}));
    m.push_back(loop_model("redbar-static", {chk(CheckKind::Unchanged, {"Line", "x"}), chk(CheckKind::Unchanged, {"Line", "y"})}));
    m.push_back(model("bananas-no-bubble-on-red", Usage::Program, {"watch"}, "watch", {}, {},
                      {edge("red", "watch", "watch", 0, {red("Bananas")}, {chk(CheckKind::NoOutput, {"Bananas"})})}));
    m.push_back(model("bowl-bubble-text", Usage::Program, {"wait", "shown"}, "wait", {"shown"}, {},
                      {edge("bubble", "wait", "shown", 0, {chk(CheckKind::Output, {"Bowl", "/End/"})},
                            {chk(CheckKind::Output, {"Bowl", "Ende!"})})}));
    m.push_back(end_model());
    m.push_back(user_model());
    return m;
}

std::vector<VariantDef> mutant_suite() {
    const std::vector<std::pair<std::vector<std::string>, std::string>> meta = {
        {{}, "Reference solution."},
        {{"Bowl.x+ missed", "No output of Bowl (End) after 1s"},
         "No action on the right key; the end bubble stays for two seconds."},
        {{"Points+5 missed", "No output of apple (over) after 1000ms"},
         "Catching the apple adds no points; the game-over bubble stays for two seconds."},
        {{"Bowl.x+ missed"}, "The right-key handler is a script without a hat, so it never runs."},
        {{"Apple.y = 170 missed"}, "The apple respawns at y = 150."},
        {{"Apple.y changed", "Bananas.y changed", "Time changed"},
         "Touching red shows the bubble but does not stop; a caught apple is not moved back up."},
        {{"Apple.y = 170 missed", "Bananas.y = 170 missed"}, "Fruits respawn at the fixed position (0, 160)."},
        {{"Points+5 missed"}, "Catching the apple adds 4 points."},
        {{"No output of Bowl (End) after 1s"}, "The end bubble is never removed."},
        {{"changed"}, "The game does not stop after the end bubble."},
        {{"Output of Bowl (End) missed"}, "The bowl never shows the end bubble."},
    };
    std::vector<VariantDef> out;
    const auto ids = variant_ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out.push_back({ids[i], build_fruit_catcher(ids[i]), meta[i].first, meta[i].second});
    }
    return out;
}

std::vector<NamedScript> scripted_suite() {
    NamedScript stay{"stay-then-both-keys",
                     {{60, InputAction::key_down("left")},
                      {70, InputAction::key_up("left")},
                      {70, InputAction::key_down("right")},
                      {80, InputAction::key_up("right")}}};
    NamedScript dodge{"dodge-left", {{0, InputAction::key_down("left")}}};
    return {stay, dodge};
}

std::string corpus_dir() {
    if (const char* env = std::getenv("MBT_CORPUS_DIR"); env && *env) return env;
    return MBT_DEFAULT_CORPUS_DIR;
}

void write_corpus(const std::string& dir) {
    const std::filesystem::path root(dir);
    json variants = json::array();
    for (const auto& v : mutant_suite()) {
        write_json(root / "programs" / (v.id + ".json"), program_to_json(v.program));
        variants.push_back(variant_to_json(v));
    }
    write_json(root / "variants.json", variants);
    write_json(root / "models" / "fruit-models.json", models_to_json(fruit_models()));
    for (const auto& s : scripted_suite()) {
        write_json(root / "inputs" / (s.name + ".json"), input_script_to_json(s.inputs));
    }
}

}  // namespace mbt
