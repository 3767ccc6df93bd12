#include "mbt/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace mbt {

using nlohmann::json;

namespace {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

const char* trigger_name(Trigger t) { return t == Trigger::IntraStep ? "intra-step" : "model-step"; }

}  // namespace

const char* input_source_name(InputSource s) { return s == InputSource::UserModels ? "userModels" : "scriptedInputs"; }

double ModelCoverage::state_ratio() const {
    return total_states ? static_cast<double>(visited_states) / static_cast<double>(total_states) : 1.0;
}

double ModelCoverage::edge_ratio() const {
    return total_edges ? static_cast<double>(traversed_edges) / static_cast<double>(total_edges) : 1.0;
}

json report_to_json(const TestReport& r) {
    json j;
    j["config"] = {{"seed", r.config.seed},
                   {"acceleration", r.config.acceleration},
                   {"maxDurationMs", r.config.max_duration_ms},
                   {"inputSource", input_source_name(r.config.input_source)},
                   {"caseSensitive", r.config.case_sensitive}};
    j["program"] = r.program_name;
    json transitions = json::array();
    for (const auto& t : r.transitions) {
        transitions.push_back({{"step", t.step}, {"time", t.time_ms}, {"modelId", t.model_id}, {"edgeId", t.edge_id},
                               {"from", t.from}, {"to", t.to}, {"trigger", trigger_name(t.trigger)}});
    }
    j["transitions"] = transitions;
    json failures = json::array();
    for (const auto& f : r.failures) {
        failures.push_back({{"modelId", f.model_id}, {"edgeId", f.edge_id}, {"effect", f.effect},
                            {"time", f.time_ms}, {"message", f.message}});
    }
    j["failures"] = failures;
    j["blockCoverage"] = r.block_coverage;
    json mc = json::array();
    for (const auto& m : r.model_coverage) {
        mc.push_back({{"modelId", m.model_id}, {"states", m.state_ratio()}, {"edges", m.edge_ratio()},
                      {"visitedStates", m.visited_states}, {"totalStates", m.total_states},
                      {"traversedEdges", m.traversed_edges}, {"totalEdges", m.total_edges}});
    }
    j["modelCoverage"] = mc;
    json contradictions = json::array();
    for (const auto& c : r.contradictions) {
        contradictions.push_back({{"step", c.step},
                                  {"first", {{"modelId", c.model_a}, {"edgeId", c.edge_a}, {"effect", c.effect_a}}},
                                  {"second", {{"modelId", c.model_b}, {"edgeId", c.edge_b}, {"effect", c.effect_b}}},
                                  {"reason", c.reason}});
    }
    j["contradictions"] = contradictions;
    json halts = json::array();
    for (const auto& h : r.halts) {
        halts.push_back({{"step", h.step}, {"modelId", h.model_id}, {"usage", usage_name(h.usage)}, {"reason", h.reason}});
    }
    j["halts"] = halts;
    j["steps"] = r.steps;
    j["endActivationStep"] = r.end_activation_step;
    j["diagnostics"] = r.diagnostics;
    j["runtimeErrors"] = r.runtime_errors;
    return j;
}

std::string render_tap(const TestReport& r) { return render_tap(std::vector<TestReport>{r}); }

std::string render_tap(const std::vector<TestReport>& runs) {
    std::vector<std::string> models;
    for (const auto& r : runs) {
        for (const auto& id : r.model_ids) {
            if (std::find(models.begin(), models.end(), id) == models.end()) models.push_back(id);
        }
    }
    // Failure messages per model, in first-seen order, with counts.
    std::map<std::string, std::vector<std::pair<std::string, int>>> by_model;
    std::size_t failures = 0;
    std::size_t contradictions = 0;
    double coverage = 0;
    for (const auto& r : runs) {
        failures += r.failures.size();
        contradictions += r.contradictions.size();
        coverage += r.block_coverage;
        for (const auto& f : r.failures) {
            auto& list = by_model[f.model_id];
            auto it = std::find_if(list.begin(), list.end(), [&](const auto& p) { return p.first == f.message; });
            if (it == list.end()) list.emplace_back(f.message, 1);
            else ++it->second;
        }
    }
    std::ostringstream os;
    os << "TAP version 13\n1.." << models.size() << "\n";
    for (std::size_t i = 0; i < models.size(); ++i) {
        const auto it = by_model.find(models[i]);
        const bool ok = it == by_model.end();
        os << (ok ? "ok " : "not ok ") << (i + 1) << " - " << models[i] << "\n";
        if (ok) continue;
        for (const auto& [msg, n] : it->second) {
            os << "  # " << msg;
            if (n > 1) os << " (x" << n << ")";
            os << "\n";
        }
    }
    os << "# runs: " << runs.size() << "\n";
    os << "# failures: " << failures << "\n";
    os << "# block coverage: " << fixed(runs.empty() ? 0.0 : coverage / static_cast<double>(runs.size()), 4) << "\n";
    os << "# contradiction removals: " << contradictions << "\n";
    for (const auto& r : runs) {
        for (const auto& c : r.contradictions) {
            os << "#   removed " << c.model_a << "/" << c.edge_a << " " << c.effect_a << " and " << c.model_b << "/"
               << c.edge_b << " " << c.effect_b << ": " << c.reason << "\n";
        }
    }
    return os.str();
}

}  // namespace mbt
