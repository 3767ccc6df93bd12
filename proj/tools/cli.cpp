#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "mbt/corpus.hpp"
#include "mbt/executor.hpp"
#include "mbt/experiment.hpp"

namespace mbt::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string program;
    std::vector<std::string> variants;
    std::string models;
    bool builtin = false;
    std::string inputs;
    std::uint64_t seed = 1;
    int repetitions = 30;
    int gen_repetitions = 20;
    double acceleration = 1;
    double max_ms = 40000;
    std::string report = "tap";
    std::string out;
    bool case_sensitive = false;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--program", o.program, "Program file (JSON)");
    cmd->add_option("--variant", o.variants, "Corpus variant id");
    cmd->add_option("--models", o.models, "Model file (JSON)");
    cmd->add_flag("--builtin", o.builtin, "Use the corpus model suite");
    cmd->add_option("--acceleration", o.acceleration, "Virtual time acceleration factor")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-ms", o.max_ms, "Run time limit in ms, before acceleration")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Seed (first seed for experiments)");
    cmd->add_flag("--case-sensitive", o.case_sensitive, "Case-sensitive name and text matching");
}

SpriteProgram load_variant(const std::string& id) {
    const fs::path file = fs::path(corpus_dir()) / "programs" / (id + ".json");
    if (fs::exists(file)) return load_program_file(file.string());
    try {
        return build_fruit_catcher(id);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::vector<Model> builtin_models() {
    const fs::path file = fs::path(corpus_dir()) / "models" / "fruit-models.json";
    if (fs::exists(file)) return parse_models_file(file.string());
    return fruit_models();
}

std::vector<Model> load_models(const Options& o) {
    if (o.builtin == !o.models.empty()) throw UsageError("give exactly one of --models and --builtin");
    return o.builtin ? builtin_models() : parse_models_file(o.models);
}

std::pair<std::string, SpriteProgram> load_one_program(const Options& o) {
    if (o.program.empty() == o.variants.empty() || o.variants.size() > 1) {
        throw UsageError("give exactly one of --program and --variant");
    }
    if (!o.program.empty()) return {fs::path(o.program).stem().string(), load_program_file(o.program)};
    return {o.variants.front(), load_variant(o.variants.front())};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

int cmd_run(const Options& o, std::ostream& out) {
    auto [name, program] = load_one_program(o);
    auto models = load_models(o);
    const bool has_user = std::any_of(models.begin(), models.end(), [](const Model& m) { return m.usage == Usage::User; });
    RunConfig cfg;
    cfg.seed = o.seed;
    cfg.acceleration = o.acceleration;
    cfg.max_duration_ms = o.max_ms;
    cfg.case_sensitive = o.case_sensitive;
    InputScript script;
    if (!o.inputs.empty()) {
        cfg.input_source = InputSource::Scripted;
        script = parse_input_script_file(o.inputs);
    } else if (!has_user) {
        throw UsageError("no input source: the models contain no user model and --inputs is not given");
    }
    if (o.report == "both" && o.out.empty()) throw UsageError("--report both needs --out");

    auto shared = std::make_shared<const SpriteProgram>(std::move(program));
    TestReport report = run(shared, models, cfg, script);
    report.program_name = name;

    const std::string json = report_to_json(report).dump(2) + "\n";
    if (o.report == "tap" || o.report == "both") out << render_tap(report);
    if (o.report == "json" || o.report == "both") {
        if (o.out.empty()) out << json;
        else write_file(o.out, json);
    } else if (!o.out.empty()) {
        write_file(o.out, render_tap(report));
    }
    return report.failures.empty() ? 0 : 1;
}

int cmd_experiment(const Options& o, std::ostream& out) {
    if (!o.program.empty()) throw UsageError("experiment runs corpus variants; use --variant");
    ExperimentConfig cfg;
    cfg.variants = o.variants;
    for (const auto& id : cfg.variants) (void)load_variant(id);
    cfg.first_seed = o.seed;
    cfg.repetitions = o.repetitions;
    cfg.gen_repetitions = o.gen_repetitions;
    cfg.acceleration = o.acceleration;
    cfg.max_duration_ms = o.max_ms;
    cfg.case_sensitive = o.case_sensitive;
    cfg.models = load_models(o);

    const auto outcomes = run_experiment_parallel(cfg);
    const auto summary = aggregate_experiment(outcomes);
    const std::string csv = experiment_csv(outcomes);
    if (o.out.empty()) {
        out << csv;
    } else {
        write_file(o.out, csv);
        write_file(o.out + ".summary.json", summary_to_json(summary).dump(2) + "\n");
    }
    out << std::left << std::setw(24) << "# variant" << std::right << std::setw(10) << "user" << std::setw(10)
        << "scripted" << std::setw(8) << "A12" << std::setw(10) << "p" << "\n";
    out << std::fixed;
    for (const auto& v : summary.variants) {
        out << "# " << std::left << std::setw(22) << v.variant << std::right << std::setprecision(2) << std::setw(10)
            << 100 * v.user_mean << std::setw(10) << 100 * v.scripted_mean << std::setw(8) << v.a12
            << std::setprecision(4) << std::setw(10) << v.p_value << "\n";
    }
    return 0;
}

int cmd_validate(const Options& o, std::ostream& out) {
    std::vector<Model> models;
    if (o.builtin) {
        models = builtin_models();
    } else if (!o.models.empty()) {
        std::ifstream f(o.models);
        if (!f) throw std::runtime_error("cannot open " + o.models);
        models = parse_models_unchecked(nlohmann::json::parse(f));
    } else {
        throw UsageError("give --models or --builtin");
    }
    std::vector<std::string> lines;
    for (const auto& m : models) {
        for (const auto& d : validate_model(m)) lines.push_back(to_string(d));
    }
    if (!o.program.empty() || !o.variants.empty()) {
        auto [name, program] = load_one_program(o);
        RunConfig cfg;
        cfg.case_sensitive = o.case_sensitive;
        Executor ex(std::make_shared<const SpriteProgram>(std::move(program)), models, cfg);
        for (const auto& d : ex.report().diagnostics) lines.push_back(d);
    }
    for (const auto& l : lines) out << l << "\n";
    if (lines.empty()) out << models.size() << " models ok\n";
    return lines.empty() ? 0 : 1;
}

int cmd_corpus_list(std::ostream& out) {
    for (const auto& v : mutant_suite()) out << v.id << "\n";
    return 0;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Model-based testing for sprite programs"};
    app.require_subcommand(1);
    Options o;

    auto* run_cmd = app.add_subcommand("run", "Run one program against a model suite");
    add_common(run_cmd, o);
    run_cmd->add_option("--inputs", o.inputs, "Scripted input file; replaces user models");
    run_cmd->add_option("--report", o.report, "Report format")->check(CLI::IsMember({"tap", "json", "both"}));
    run_cmd->add_option("--out", o.out, "Report file");

    auto* exp_cmd = app.add_subcommand("experiment", "Compare user-model and scripted inputs over the corpus");
    add_common(exp_cmd, o);
    exp_cmd->add_option("--repetitions", o.repetitions, "Seeds per variant and arm")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--gen-repetitions", o.gen_repetitions, "Input generations per seed")
        ->check(CLI::PositiveNumber);
    exp_cmd->add_option("--out", o.out, "CSV file; the summary goes to <out>.summary.json");

    auto* val_cmd = app.add_subcommand("validate", "Check models for structural errors");
    add_common(val_cmd, o);

    auto* list_cmd = app.add_subcommand("corpus-list", "List corpus variant ids");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(o, out);
        if (exp_cmd->parsed()) return cmd_experiment(o, out);
        if (val_cmd->parsed()) return cmd_validate(o, out);
        if (list_cmd->parsed()) return cmd_corpus_list(out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

}  // namespace mbt::cli
