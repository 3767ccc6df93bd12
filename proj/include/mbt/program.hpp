#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace mbt {

inline constexpr double kStageMinX = -240.0;
inline constexpr double kStageMaxX = 240.0;
inline constexpr double kStageMinY = -180.0;
inline constexpr double kStageMaxY = 180.0;

class ProgramError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Rgb {
    int r = 0;
    int g = 0;
    int b = 0;
    bool operator==(const Rgb&) const = default;
};

using BlockId = std::uint32_t;

enum class ExprOp {
    Num, Str, Var, Timer, PickRandom, KeyPressed, TouchingSprite, TouchingColor,
    MouseX, MouseY, Lt, Gt, Eq, Add, Sub, Mul, Div, And, Or, Not,
};

enum class ValueType { Number, Boolean, Text };

struct Expr {
    ExprOp op = ExprOp::Num;
    double number = 0;
    std::string text;  // string literal, variable name, key, or sprite name
    Rgb color;
    std::vector<Expr> args;

    bool operator==(const Expr&) const = default;
};

enum class BlockOp {
    WhenGreenFlag, WhenKeyPressed,
    Forever, Repeat, If, IfElse, WaitSeconds,
    SetX, SetY, ChangeX, ChangeY, GoToXY,
    Say, SayForSeconds, SetVar, ChangeVar,
    Show, Hide, ResetTimer, StopAll, StopScript,
};

struct Block {
    BlockOp op = BlockOp::StopScript;
    BlockId id = 0;
    std::string name;  // stable textual id, from the document or auto-assigned
    std::string key;   // whenKeyPressed
    std::string var;   // setVar / changeVar
    std::vector<Expr> args;
    std::vector<Block> body;
    std::vector<Block> else_body;

    bool operator==(const Block&) const = default;
};

// A script is a hat followed by statements. A script whose first block is not
// a hat is dead code: it is loaded and counted but never runs.
struct Script {
    std::vector<Block> blocks;

    bool has_hat() const;
    bool operator==(const Script&) const = default;
};

struct VariableDef {
    std::string name;
    double value = 0;
    bool operator==(const VariableDef&) const = default;
};

struct SpriteDef {
    std::string name;
    double x = 0;
    double y = 0;
    double width = 40;
    double height = 40;
    Rgb fill;
    bool visible = true;
    std::vector<VariableDef> variables;
    std::vector<Script> scripts;

    bool operator==(const SpriteDef&) const = default;
};

struct SpriteProgram {
    std::vector<SpriteDef> sprites;
    std::vector<VariableDef> globals;

    // Filled in by finalize(): block names indexed by BlockId.
    std::vector<std::string> block_names;

    std::size_t block_count() const { return block_names.size(); }
    int sprite_index(std::string_view name) const;
    int global_index(std::string_view name) const;

    bool operator==(const SpriteProgram&) const = default;
};

// Validates the program, type-checks expressions and assigns block ids in
// depth-first declaration order. Throws ProgramError.
void finalize(SpriteProgram& program);

SpriteProgram load_program(const nlohmann::json& doc);
SpriteProgram load_program_text(std::string_view text);
SpriteProgram load_program_file(const std::string& path);
nlohmann::json program_to_json(const SpriteProgram& program);

ValueType expr_type(const Expr& e);
std::string_view block_op_name(BlockOp op);

// Canonical key spelling: "left arrow", "ArrowLeft" and "Left" all map to "left".
std::string normalize_key(std::string_view key);

// Small construction DSL used by the fixture corpus and the tests.
namespace dsl {

Expr num(double v);
Expr str(std::string s);
Expr var(std::string name);
Expr timer();
Expr pick_random(Expr lo, Expr hi);
Expr key_pressed(std::string key);
Expr touching(std::string sprite);
Expr touching_color(Rgb c);
Expr mouse_x();
Expr mouse_y();
Expr lt(Expr a, Expr b);
Expr gt(Expr a, Expr b);
Expr eq(Expr a, Expr b);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr and_(Expr a, Expr b);
Expr or_(Expr a, Expr b);
Expr not_(Expr a);

Block when_green_flag();
Block when_key_pressed(std::string key);
Block forever(std::vector<Block> body);
Block repeat(Expr times, std::vector<Block> body);
Block if_(Expr cond, std::vector<Block> body);
Block if_else(Expr cond, std::vector<Block> then_body, std::vector<Block> else_body);
Block wait(Expr seconds);
Block set_x(Expr v);
Block set_y(Expr v);
Block change_x(Expr v);
Block change_y(Expr v);
Block go_to(Expr x, Expr y);
Block say(Expr text);
Block say_for(Expr text, Expr seconds);
Block set_var(std::string name, Expr v);
Block change_var(std::string name, Expr v);
Block show();
Block hide();
Block reset_timer();
Block stop_all();
Block stop_script();

}  // namespace dsl

}  // namespace mbt
