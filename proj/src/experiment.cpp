#include "mbt/experiment.hpp"

#include <cstdio>
#include <map>
#include <stdexcept>

#include "mbt/rng.hpp"
#include "mbt/stats.hpp"

namespace mbt {

namespace {

struct Task {
    std::size_t variant = 0;
    InputSource arm = InputSource::UserModels;
    std::uint64_t seed = 0;
};

struct Fixture {
    std::vector<std::string> ids;
    std::vector<std::shared_ptr<const SpriteProgram>> programs;
    std::vector<Model> models;
};

Fixture load_fixture(const ExperimentConfig& cfg) {
    Fixture f;
    f.ids = cfg.variants.empty() ? variant_ids() : cfg.variants;
    for (const auto& id : f.ids) f.programs.push_back(std::make_shared<const SpriteProgram>(build_fruit_catcher(id)));
    f.models = cfg.models ? *cfg.models : fruit_models();
    return f;
}

std::vector<Task> tasks_for(const Fixture& f, const ExperimentConfig& cfg) {
    std::vector<Task> tasks;
    for (std::size_t v = 0; v < f.ids.size(); ++v) {
        for (InputSource arm : {InputSource::UserModels, InputSource::Scripted}) {
            for (int r = 0; r < cfg.repetitions; ++r) tasks.push_back({v, arm, cfg.first_seed + std::uint64_t(r)});
        }
    }
    return tasks;
}

SeedOutcome run_task(const Fixture& f, const Task& t, const ExperimentConfig& cfg) {
    return run_seed_outcome(f.ids[t.variant], *f.programs[t.variant], f.models, t.arm, t.seed, cfg);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::uint64_t run_seed(std::uint64_t seed, int rep) { return derive_seed(seed, 100 + std::uint64_t(rep)); }

SeedOutcome run_seed_outcome(const std::string& variant, const SpriteProgram& program,
                             const std::vector<Model>& models, InputSource arm, std::uint64_t seed,
                             const ExperimentConfig& cfg) {
    auto shared = std::make_shared<const SpriteProgram>(program);
    SeedOutcome out;
    out.variant = variant;
    out.arm = arm;
    out.seed = seed;

    RunConfig rc;
    rc.acceleration = cfg.acceleration;
    rc.max_duration_ms = cfg.max_duration_ms;
    rc.input_source = arm;
    rc.case_sensitive = cfg.case_sensitive;

    std::vector<bool> covered;
    auto absorb = [&](const TestReport& r) {
        if (covered.empty()) covered.assign(r.covered_blocks.size(), false);
        for (std::size_t i = 0; i < r.covered_blocks.size() && i < covered.size(); ++i) {
            if (r.covered_blocks[i]) covered[i] = true;
        }
        for (const auto& fl : r.failures) out.failures.insert({fl.model_id, fl.message});
        out.contradictions += r.contradictions.size();
        ++out.runs;
    };

    if (arm == InputSource::UserModels) {
        for (int g = 0; g < cfg.gen_repetitions; ++g) {
            rc.seed = run_seed(seed, g);
            absorb(run(shared, models, rc));
        }
    } else {
        const auto suite = scripted_suite();
        for (std::size_t i = 0; i < suite.size(); ++i) {
            rc.seed = run_seed(seed, int(i));
            absorb(run(shared, models, rc, suite[i].inputs));
        }
    }
    std::size_t hit = 0;
    for (bool b : covered) hit += b;
    out.coverage = covered.empty() ? 1.0 : double(hit) / double(covered.size());
    return out;
}

std::vector<SeedOutcome> run_experiment_serial(const ExperimentConfig& cfg) {
    const Fixture f = load_fixture(cfg);
    const auto tasks = tasks_for(f, cfg);
    std::vector<SeedOutcome> out;
    out.reserve(tasks.size());
    for (const auto& t : tasks) out.push_back(run_task(f, t, cfg));
    return out;
}

std::vector<SeedOutcome> run_experiment_parallel(const ExperimentConfig& cfg) {
    const Fixture f = load_fixture(cfg);
    const auto tasks = tasks_for(f, cfg);
    std::vector<SeedOutcome> out(tasks.size());
    const long n = long(tasks.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) out[std::size_t(i)] = run_task(f, tasks[std::size_t(i)], cfg);
    return out;
}

ExperimentSummary aggregate_experiment(const std::vector<SeedOutcome>& outcomes) {
    std::vector<std::string> order;
    std::map<std::string, VariantSummary> by_id;
    for (const auto& o : outcomes) {
        auto [it, fresh] = by_id.try_emplace(o.variant);
        if (fresh) {
            order.push_back(o.variant);
            it->second.variant = o.variant;
        }
        auto& v = it->second;
        if (o.arm == InputSource::UserModels) {
            v.user_coverage.push_back(o.coverage);
            v.user_failures.push_back(double(o.failures.size()));
        } else {
            v.scripted_coverage.push_back(o.coverage);
            v.scripted_failures.push_back(double(o.failures.size()));
        }
    }
    ExperimentSummary s;
    for (const auto& id : order) {
        auto v = by_id[id];
        if (v.user_coverage.empty() || v.scripted_coverage.empty()) {
            throw std::invalid_argument("variant '" + id + "' is missing from one input arm");
        }
        v.user_mean = mean(v.user_coverage);
        v.scripted_mean = mean(v.scripted_coverage);
        v.user_failures_mean = mean(v.user_failures);
        v.scripted_failures_mean = mean(v.scripted_failures);
        v.a12 = a12(v.user_coverage, v.scripted_coverage);
        v.p_value = mann_whitney_p(v.user_coverage, v.scripted_coverage);
        s.variants.push_back(std::move(v));
    }
    return s;
}

std::string experiment_csv(const std::vector<SeedOutcome>& outcomes) {
    std::string csv = "variant,arm,seed,coverage,failures\n";
    for (const auto& o : outcomes) {
        csv += o.variant + "," + input_source_name(o.arm) + "," + std::to_string(o.seed) + "," + fmt(o.coverage) +
               "," + std::to_string(o.failures.size()) + "\n";
    }
    return csv;
}

nlohmann::json summary_to_json(const ExperimentSummary& s) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& v : s.variants) {
        rows.push_back({{"variant", v.variant},
                        {"userModels", {{"meanCoverage", v.user_mean}, {"meanFailures", v.user_failures_mean},
                                        {"coverage", v.user_coverage}}},
                        {"scriptedInputs", {{"meanCoverage", v.scripted_mean},
                                            {"meanFailures", v.scripted_failures_mean},
                                            {"coverage", v.scripted_coverage}}},
                        {"a12", v.a12},
                        {"pValue", v.p_value}});
    }
    return {{"variants", rows}};
}

}  // namespace mbt
