#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mbt/checks.hpp"
#include "mbt/executor.hpp"
#include "mbt/model.hpp"
#include "mbt/program.hpp"
#include "mbt/vm.hpp"

namespace mbt::test {

inline std::shared_ptr<const SpriteProgram> share(SpriteProgram p) {
    return std::make_shared<const SpriteProgram>(std::move(p));
}

inline SpriteDef sprite(std::string name, double x, double y, std::vector<Script> scripts = {}) {
    SpriteDef s;
    s.name = std::move(name);
    s.x = x;
    s.y = y;
    s.scripts = std::move(scripts);
    return s;
}

inline SpriteProgram program_of(std::vector<SpriteDef> sprites, std::vector<VariableDef> globals = {}) {
    SpriteProgram p;
    p.sprites = std::move(sprites);
    p.globals = std::move(globals);
    finalize(p);
    return p;
}

inline Check chk(CheckKind k, std::vector<CheckArg> args = {}, bool negated = false) {
    return {k, std::move(args), negated};
}

inline Edge edge(std::string id, std::string from, std::string to, int order, std::vector<Check> conds,
                 std::vector<Effect> effects = {}) {
    Edge e;
    e.id = std::move(id);
    e.from = std::move(from);
    e.to = std::move(to);
    e.order = order;
    e.conditions = std::move(conds);
    e.effects = std::move(effects);
    return e;
}

inline Model model(std::string id, Usage usage, std::vector<std::string> nodes, std::string start,
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

// Steps a fresh VM `n` times without inputs.
inline VmState run_steps(std::shared_ptr<const SpriteProgram> p, int n, std::uint64_t seed = 1, double acc = 1) {
    VmState vm = green_flag(std::move(p), seed, acc);
    for (int i = 0; i < n; ++i) vm.step({});
    return vm;
}

inline bool has_failure(const TestReport& r, const std::string& needle) {
    for (const auto& f : r.failures) {
        if (f.message.find(needle) != std::string::npos) return true;
    }
    return false;
}

}  // namespace mbt::test
