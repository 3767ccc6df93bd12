#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mbt/input.hpp"

namespace mbt {

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Usage { Program, End, User };
const char* usage_name(Usage u);

enum class CheckKind {
    KeyDown,
    SpriteClicked,
    SpriteTouching,
    TouchingColor,
    TouchingEdge,
    AttrComp,
    AttrChange,
    VarComp,
    VarChange,
    Output,
    NoOutput,
    Unchanged,
    TimeElapsed,
    TimeBetween,
    Probability,
    True,
};

const char* check_name(CheckKind k);
std::optional<CheckKind> parse_check_kind(std::string_view name);

using CheckArg = std::variant<double, std::string>;

struct Check {
    CheckKind kind = CheckKind::True;
    std::vector<CheckArg> args;
    bool negated = false;

    bool operator==(const Check&) const = default;
};

// Argument accessors; they throw ModelError on a type mismatch.
std::string arg_text(const Check& c, std::size_t i);
double arg_number(const Check& c, std::size_t i);

// Short human form, e.g. "AttrChange(Bowl, x, +)" or "!KeyDown(left)".
std::string describe(const Check& c);

using Effect = std::variant<Check, InputAction>;

struct Node {
    std::string id;
    std::string label;
    bool operator==(const Node&) const = default;
};

struct Edge {
    std::string id;
    std::string from;
    std::string to;
    int order = 0;
    std::string label;
    std::vector<Check> conditions;
    std::vector<Effect> effects;
    std::optional<double> force_test_at;     // ms since program start
    std::optional<double> force_test_after;  // ms since the model's last transition

    bool operator==(const Edge&) const = default;
};

struct Model {
    std::string id;
    Usage usage = Usage::Program;
    std::vector<Node> nodes;
    std::string start;
    std::vector<std::string> stop;
    std::vector<std::string> stop_all;
    std::vector<Edge> edges;

    bool has_node(std::string_view id) const;
    bool is_stop(std::string_view id) const;
    bool is_stop_all(std::string_view id) const;
    // Edges leaving `state`, sorted by order.
    std::vector<const Edge*> outgoing(std::string_view state) const;

    bool operator==(const Model&) const = default;
};

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string model_id;
    std::string edge_id;  // empty for model-level findings
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

std::string to_string(const Diagnostic& d);

std::vector<Diagnostic> validate_model(const Model& m);

// Throws ModelError on syntax errors, unknown checks, bad arity, duplicate
// edge orders and error-severity diagnostics.
std::vector<Model> parse_models(const nlohmann::json& doc);
std::vector<Model> parse_models_text(std::string_view text);
std::vector<Model> parse_models_file(const std::string& path);

// Structural parse only: validation is left to the caller.
std::vector<Model> parse_models_unchecked(const nlohmann::json& doc);

nlohmann::json models_to_json(const std::vector<Model>& models);

nlohmann::json effect_to_json(const Effect& e);
Effect effect_from_json(const nlohmann::json& j);
nlohmann::json input_action_to_json(const InputAction& a);
InputAction input_action_from_json(const nlohmann::json& j);

// TimeBetween/TimeElapsed argument in ms: a number of ms, or "1s"/"1000ms".
double parse_duration_ms(const CheckArg& arg);
std::string duration_text(const CheckArg& arg);

}  // namespace mbt
