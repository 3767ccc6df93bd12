#include <gtest/gtest.h>

#include <algorithm>

#include "mbt/corpus.hpp"
#include "mbt/model.hpp"
#include "support.hpp"

using namespace mbt;
using mbt::test::chk;
using mbt::test::edge;
using mbt::test::model;

namespace {

bool has_message(const std::vector<Diagnostic>& ds, const std::string& needle) {
    return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.message.find(needle) != std::string::npos; });
}

const char* kTinyDoc = R"({"models": [{
  "id": "m", "usage": "program", "startNodeId": "a", "stopNodeIds": ["b"], "stopAllNodeIds": [],
  "nodes": [{"id": "a", "label": "A"}, {"id": "b", "label": "B"}],
  "edges": [{"id": "e", "from": "a", "to": "b", "order": 0, "label": "", "conditions": [], "effects": []}]
}]})";

}  // namespace

TEST(ParseModels, CorpusSuiteCounts) {
    auto models = parse_models(models_to_json(fruit_models()));
    ASSERT_EQ(models.size(), 21u);
    auto count = [&](Usage u) { return std::count_if(models.begin(), models.end(), [&](const Model& m) { return m.usage == u; }); };
    EXPECT_EQ(count(Usage::Program), 19);
    EXPECT_EQ(count(Usage::End), 1);
    EXPECT_EQ(count(Usage::User), 1);
}

TEST(ParseModels, RoundTrip) {
    auto models = fruit_models();
    EXPECT_EQ(parse_models(models_to_json(models)), models);
}

TEST(ParseModels, EmptyConditionsAccepted) {
    auto models = parse_models_text(kTinyDoc);
    ASSERT_EQ(models.size(), 1u);
    EXPECT_TRUE(models[0].edges[0].conditions.empty());
}

TEST(ParseModels, StartInStopRejected) {
    std::string doc = kTinyDoc;
    doc.replace(doc.find(R"("stopNodeIds": ["b"])"), 20, R"("stopNodeIds": ["a"])");
    EXPECT_THROW(parse_models_text(doc), ModelError);
}

TEST(ParseModels, Errors) {
    EXPECT_THROW(parse_models_text("{"), std::exception);
    std::string unknown = kTinyDoc;
    unknown.replace(unknown.find(R"("conditions": [])"), 16, R"("conditions": [{"name": "Levitates", "args": []}])");
    EXPECT_THROW(parse_models_text(unknown), ModelError);
    std::string arity = kTinyDoc;
    arity.replace(arity.find(R"("conditions": [])"), 16, R"("conditions": [{"name": "KeyDown", "args": []}])");
    EXPECT_THROW(parse_models_text(arity), ModelError);
    std::string op = kTinyDoc;
    op.replace(op.find(R"("conditions": [])"), 16,
               R"("conditions": [{"name": "AttrComp", "args": ["A", "x", "~", 1]}])");
    EXPECT_THROW(parse_models_text(op), ModelError);
}

TEST(ParseModels, DuplicateOrderRejected) {
    auto m = model("m", Usage::Program, {"a", "b"}, "a", {}, {},
                   {edge("e1", "a", "b", 0, {}), edge("e2", "a", "a", 0, {})});
    EXPECT_THROW(parse_models(models_to_json({m})), ModelError);
    EXPECT_TRUE(has_message(validate_model(m), "duplicate order"));
}

TEST(ValidateModel, CorpusModelsAreClean) {
    for (const auto& m : fruit_models()) EXPECT_TRUE(validate_model(m).empty()) << m.id;
}

TEST(ValidateModel, BowlStartHasFourOrderedEdges) {
    auto models = fruit_models();
    const auto& bowl = models.front();
    ASSERT_EQ(bowl.id, "bowl");
    auto out = bowl.outgoing("start");
    ASSERT_EQ(out.size(), 4u);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i]->order, int(i));
    EXPECT_EQ(out[0]->to, "text");
    EXPECT_EQ(out[0]->force_test_at, 31000);
}

TEST(ValidateModel, UnreachableState) {
    auto m = model("m", Usage::Program, {"a", "b", "island"}, "a", {}, {}, {edge("e", "a", "b", 0, {})});
    auto ds = validate_model(m);
    ASSERT_TRUE(has_message(ds, "unreachable state 'island'"));
    EXPECT_EQ(ds[0].severity, Diagnostic::Severity::Warning);
}

TEST(ValidateModel, InputActionInProgramModel) {
    auto m = model("m", Usage::Program, {"a"}, "a", {}, {},
                   {edge("e", "a", "a", 0, {}, {InputAction::key_down("left")})});
    EXPECT_TRUE(has_message(validate_model(m), "input action keyDown(left) in program model"));
}

TEST(ValidateModel, PredicateEffectInUserModel) {
    auto m = model("u", Usage::User, {"a"}, "a", {}, {},
                   {edge("e", "a", "a", 0, {}, {chk(CheckKind::Unchanged, {"Bowl", "x"})})});
    EXPECT_TRUE(has_message(validate_model(m), "in user model"));
}

TEST(ValidateModel, ProbabilityOutsideUserModel) {
    auto m = model("m", Usage::Program, {"a"}, "a", {}, {},
                   {edge("e", "a", "a", 0, {chk(CheckKind::Probability, {0.5})})});
    EXPECT_TRUE(has_message(validate_model(m), "Probability outside a user model"));
}

TEST(ValidateModel, StopStateWithOutgoingEdge) {
    auto m = model("m", Usage::Program, {"a", "b"}, "a", {"b"}, {},
                   {edge("e1", "a", "b", 0, {}), edge("e2", "b", "a", 0, {})});
    EXPECT_TRUE(has_message(validate_model(m), "has an outgoing edge"));
}

TEST(ValidateModel, StopAllMustBeStop) {
    auto m = model("m", Usage::Program, {"a", "b"}, "a", {}, {"b"}, {edge("e1", "a", "b", 0, {})});
    EXPECT_TRUE(has_message(validate_model(m), "is not a stop state"));
}

TEST(ValidateModel, NonPositiveForce) {
    auto e = edge("e1", "a", "b", 0, {});
    e.force_test_at = 0;
    auto m = model("m", Usage::Program, {"a", "b"}, "a", {"b"}, {}, {e});
    EXPECT_TRUE(has_message(validate_model(m), "forceTestAt must be positive"));
}

TEST(Duration, ParsesUnits) {
    EXPECT_EQ(parse_duration_ms(CheckArg{1000.0}), 1000);
    EXPECT_EQ(parse_duration_ms(CheckArg{std::string("1s")}), 1000);
    EXPECT_EQ(parse_duration_ms(CheckArg{std::string("250ms")}), 250);
    EXPECT_EQ(duration_text(CheckArg{1000.0}), "1000ms");
    EXPECT_EQ(duration_text(CheckArg{std::string("1s")}), "1s");
}

TEST(CheckCatalog, NamesRoundTrip) {
    for (const char* n : {"KeyDown", "SpriteClicked", "SpriteTouching", "TouchingColor", "TouchingEdge", "AttrComp",
                          "AttrChange", "VarComp", "VarChange", "Output", "NoOutput", "Unchanged", "TimeElapsed",
                          "TimeBetween", "Probability", "True"}) {
        auto k = parse_check_kind(n);
        ASSERT_TRUE(k.has_value()) << n;
        EXPECT_STREQ(check_name(*k), n);
    }
    EXPECT_FALSE(parse_check_kind("Levitates").has_value());
}

TEST(InputActionJson, StageBoundsEnforced) {
    EXPECT_THROW(input_action_from_json({{"name", "mouseMove"}, {"args", {500, 0}}}), ModelError);
    auto a = input_action_from_json({{"name", "mouseClick"}, {"args", {10, 20}}});
    EXPECT_EQ(a, InputAction::mouse_click(10, 20));
    EXPECT_EQ(input_action_from_json(input_action_to_json(InputAction::key_press_for("left", 3))),
              InputAction::key_press_for("left", 3));
}
