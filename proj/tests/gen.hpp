#pragma once

// Random programs and model suites for the property tests.

#include <algorithm>
#include <random>

#include "support.hpp"

namespace mbt::test {

class CaseGen {
public:
    explicit CaseGen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[std::size_t(uniform(0, int(v.size()) - 1))]; }

    SpriteProgram program() {
        std::vector<SpriteDef> sprites;
        for (const char* name : {"A", "B"}) {
            SpriteDef s = sprite(name, uniform(-100, 100), uniform(-100, 100));
            int scripts = uniform(1, 2);
            for (int i = 0; i < scripts; ++i) s.scripts.push_back(script());
            sprites.push_back(std::move(s));
        }
        return program_of(std::move(sprites), {{"V", 0}});
    }

    Check condition(bool allow_time = true) {
        using K = CheckKind;
        const std::string spr = coin() ? "A" : "B";
        const std::string attr = coin() ? "x" : "y";
        Check c;
        switch (uniform(0, allow_time ? 11 : 9)) {
        case 0: c = chk(K::KeyDown, {coin() ? "left" : "right"}); break;
        case 1: c = chk(K::AttrComp, {spr, attr, pick(ops()), double(uniform(-60, 60))}); break;
        case 2: c = chk(K::AttrChange, {spr, attr, pick(std::vector<std::string>{"+", "-", "="})}); break;
        case 3: c = chk(K::VarChange, {"global", "V", pick(std::vector<std::string>{"+", "-", "+1", "-2"})}); break;
        case 4: c = chk(K::VarComp, {"global", "V", pick(ops()), double(uniform(-5, 5))}); break;
        case 5: c = chk(K::TouchingEdge, {spr}); break;
        case 6: c = chk(K::SpriteTouching, {"A", "B"}); break;
        case 7: c = chk(K::Output, {spr, pick(std::vector<std::string>{"hi", "/b.e/", "x"})}); break;
        case 8: c = chk(K::Unchanged, {spr, attr}); break;
        case 9: c = chk(K::True); break;
        case 10: c = chk(K::TimeBetween, {double(uniform(50, 600))}); break;
        default: c = chk(K::TimeElapsed, {double(uniform(100, 2000))}); break;
        }
        c.negated = c.kind != K::True && coin(0.3);
        return c;
    }

    Check effect() {
        Check c = condition(false);
        if (c.kind == CheckKind::KeyDown) c = chk(CheckKind::Unchanged, {"A", "x"});
        return c;
    }

    // Random machine with states s0..s{n-1}; s0 is the start.
    Model machine(const std::string& id, Usage usage) {
        const int n = uniform(2, 4);
        std::vector<std::string> nodes;
        for (int i = 0; i < n; ++i) nodes.push_back("s" + std::to_string(i));
        std::vector<std::string> stop, stop_all;
        if (usage != Usage::User && coin(0.7)) {
            stop.push_back(nodes.back());
            if (coin(0.5)) stop_all.push_back(nodes.back());
        }
        std::vector<Edge> edges;
        int next_id = 0;
        for (const auto& from : nodes) {
            if (std::find(stop.begin(), stop.end(), from) != stop.end()) continue;
            const int k = uniform(0, 3);
            std::vector<int> orders(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) orders[std::size_t(i)] = i;
            std::shuffle(orders.begin(), orders.end(), rng_);
            for (int i = 0; i < k; ++i) {
                Edge e = edge("e" + std::to_string(next_id++), from, pick(nodes), orders[std::size_t(i)], {});
                if (usage == Usage::User) {
                    if (coin(0.7)) e.conditions.push_back(chk(CheckKind::Probability, {real(0, 1)}));
                    const std::string key = coin() ? "left" : "right";
                    e.effects.push_back(coin() ? Effect{InputAction::key_down(key)} : Effect{InputAction::key_up(key)});
                    if (coin(0.2)) e.effects.push_back(InputAction::release_all());
                } else {
                    const int nc = uniform(0, 2);
                    for (int j = 0; j < nc; ++j) e.conditions.push_back(condition());
                    const int ne = uniform(0, 2);
                    for (int j = 0; j < ne; ++j) e.effects.push_back(effect());
                    if (coin(0.1)) e.force_test_at = uniform(100, 3000);
                    if (coin(0.1)) e.force_test_after = uniform(100, 1500);
                }
                edges.push_back(std::move(e));
            }
        }
        return model(id, usage, nodes, nodes.front(), stop, stop_all, std::move(edges));
    }

    std::vector<Model> suite() {
        std::vector<Model> models;
        const int programs = uniform(0, 3);
        for (int i = 0; i < programs; ++i) models.push_back(machine("p" + std::to_string(i), Usage::Program));
        const int ends = uniform(0, 2);
        for (int i = 0; i < ends; ++i) models.push_back(machine("end" + std::to_string(i), Usage::End));
        models.push_back(machine("user", Usage::User));
        std::shuffle(models.begin(), models.end(), rng_);
        return models;
    }

    RunConfig config() {
        RunConfig c;
        c.seed = std::uniform_int_distribution<std::uint64_t>()(rng_);
        c.acceleration = coin() ? 1 : 10;
        c.max_duration_ms = double(uniform(15, 60)) * double(kStepMs) * c.acceleration;
        return c;
    }

private:
    static const std::vector<std::string>& ops() {
        static const std::vector<std::string> v = {"<", "<=", ">", ">=", "="};
        return v;
    }

    Block statement(int depth) {
        using namespace dsl;
        switch (uniform(0, depth > 0 ? 7 : 9)) {
        case 0: return change_x(num(uniform(-15, 15)));
        case 1: return change_y(num(uniform(-15, 15)));
        case 2: return change_var("V", num(uniform(-3, 3)));
        case 3: return wait(num(real(0.02, 0.3)));
        case 4: return say_for(str(coin() ? "hi" : "bye"), num(real(0.05, 0.3)));
        case 5: return set_x(num(uniform(-200, 200)));
        case 6: return go_to(pick_random(num(-100), num(100)), num(uniform(-150, 150)));
        case 7: return coin(0.1) ? stop_all() : say(str("x"));
        case 8: return if_(key_pressed(coin() ? "left" : "right"), {change_x(num(coin() ? 10 : -10))});
        default: return if_else(gt(var("V"), num(0)), {statement(depth + 1)}, {statement(depth + 1)});
        }
    }

    Script script() {
        using namespace dsl;
        std::vector<Block> body;
        const int n = uniform(1, 3);
        for (int i = 0; i < n; ++i) body.push_back(statement(0));
        Block loop = coin(0.7) ? forever(body) : repeat(num(uniform(1, 20)), body);
        return {{when_green_flag(), loop}};
    }

    std::mt19937_64 rng_;
};

}  // namespace mbt::test
