#include "mbt/program.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mbt {

using nlohmann::json;

namespace {

struct OpName {
    std::string_view name;
    BlockOp op;
};

constexpr OpName kBlockOps[] = {
    {"whenGreenFlag", BlockOp::WhenGreenFlag}, {"whenKeyPressed", BlockOp::WhenKeyPressed},
    {"forever", BlockOp::Forever}, {"repeat", BlockOp::Repeat}, {"if", BlockOp::If},
    {"ifElse", BlockOp::IfElse}, {"waitSeconds", BlockOp::WaitSeconds},
    {"setX", BlockOp::SetX}, {"setY", BlockOp::SetY}, {"changeX", BlockOp::ChangeX},
    {"changeY", BlockOp::ChangeY}, {"goToXY", BlockOp::GoToXY}, {"say", BlockOp::Say},
    {"sayForSeconds", BlockOp::SayForSeconds}, {"setVar", BlockOp::SetVar},
    {"changeVar", BlockOp::ChangeVar}, {"show", BlockOp::Show}, {"hide", BlockOp::Hide},
    {"resetTimer", BlockOp::ResetTimer}, {"stopAll", BlockOp::StopAll},
    {"stopScript", BlockOp::StopScript},
};

struct ExprName {
    std::string_view name;
    ExprOp op;
};

constexpr ExprName kExprOps[] = {
    {"var", ExprOp::Var}, {"timer", ExprOp::Timer}, {"pickRandom", ExprOp::PickRandom},
    {"keyPressed", ExprOp::KeyPressed}, {"touchingSprite", ExprOp::TouchingSprite},
    {"touchingColor", ExprOp::TouchingColor}, {"mouseX", ExprOp::MouseX},
    {"mouseY", ExprOp::MouseY}, {"<", ExprOp::Lt}, {">", ExprOp::Gt}, {"=", ExprOp::Eq},
    {"+", ExprOp::Add}, {"-", ExprOp::Sub}, {"*", ExprOp::Mul}, {"/", ExprOp::Div},
    {"and", ExprOp::And}, {"or", ExprOp::Or}, {"not", ExprOp::Not},
};

std::string_view expr_op_name(ExprOp op) {
    for (const auto& e : kExprOps) {
        if (e.op == op) return e.name;
    }
    return "?";
}

bool is_hat(BlockOp op) { return op == BlockOp::WhenGreenFlag || op == BlockOp::WhenKeyPressed; }

const json& require(const json& obj, const char* field, std::string_view where) {
    auto it = obj.find(field);
    if (it == obj.end()) {
        throw ProgramError(std::string(where) + ": missing field '" + field + "'");
    }
    return *it;
}

Rgb parse_rgb(const json& j, std::string_view where) {
    if (!j.is_array() || j.size() != 3) {
        throw ProgramError(std::string(where) + ": color must be [r, g, b]");
    }
    Rgb c{j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
    for (int v : {c.r, c.g, c.b}) {
        if (v < 0 || v > 255) throw ProgramError(std::string(where) + ": color component out of range");
    }
    return c;
}

Expr parse_expr(const json& j) {
    if (j.is_number()) return dsl::num(j.get<double>());
    if (j.is_string()) return dsl::str(j.get<std::string>());
    if (!j.is_object()) throw ProgramError("malformed expression: " + j.dump());
    const std::string op = require(j, "op", "expression").get<std::string>();
    auto it = std::find_if(std::begin(kExprOps), std::end(kExprOps),
                           [&](const ExprName& e) { return e.name == op; });
    if (it == std::end(kExprOps)) throw ProgramError("unknown expression kind '" + op + "'");
    Expr e;
    e.op = it->op;
    switch (e.op) {
    case ExprOp::Var:
        e.text = require(j, "name", op).get<std::string>();
        break;
    case ExprOp::KeyPressed:
        e.text = normalize_key(require(j, "key", op).get<std::string>());
        break;
    case ExprOp::TouchingSprite:
        e.text = require(j, "sprite", op).get<std::string>();
        break;
    case ExprOp::TouchingColor:
        e.color = parse_rgb(require(j, "color", op), op);
        break;
    case ExprOp::PickRandom:
        e.args.push_back(parse_expr(require(j, "lo", op)));
        e.args.push_back(parse_expr(require(j, "hi", op)));
        break;
    case ExprOp::Not:
        e.args.push_back(parse_expr(require(j, "a", op)));
        break;
    case ExprOp::Timer:
    case ExprOp::MouseX:
    case ExprOp::MouseY:
        break;
    default:
        e.args.push_back(parse_expr(require(j, "a", op)));
        e.args.push_back(parse_expr(require(j, "b", op)));
        break;
    }
    return e;
}

std::vector<Block> parse_blocks(const json& j);

Block parse_block(const json& j) {
    if (!j.is_object()) throw ProgramError("malformed block: " + j.dump());
    const std::string op = require(j, "op", "block").get<std::string>();
    auto it = std::find_if(std::begin(kBlockOps), std::end(kBlockOps),
                           [&](const OpName& e) { return e.name == op; });
    if (it == std::end(kBlockOps)) throw ProgramError("unknown block kind '" + op + "'");
    Block b;
    b.op = it->op;
    if (auto id = j.find("id"); id != j.end()) b.name = id->get<std::string>();
    switch (b.op) {
    case BlockOp::WhenKeyPressed:
        b.key = normalize_key(require(j, "key", op).get<std::string>());
        break;
    case BlockOp::Forever:
        b.body = parse_blocks(require(j, "body", op));
        break;
    case BlockOp::Repeat:
        b.args.push_back(parse_expr(require(j, "times", op)));
        b.body = parse_blocks(require(j, "body", op));
        break;
    case BlockOp::If:
        b.args.push_back(parse_expr(require(j, "cond", op)));
        b.body = parse_blocks(require(j, "body", op));
        break;
    case BlockOp::IfElse:
        b.args.push_back(parse_expr(require(j, "cond", op)));
        b.body = parse_blocks(require(j, "then", op));
        b.else_body = parse_blocks(require(j, "else", op));
        break;
    case BlockOp::WaitSeconds:
        b.args.push_back(parse_expr(require(j, "secs", op)));
        break;
    case BlockOp::SetX:
    case BlockOp::SetY:
    case BlockOp::ChangeX:
    case BlockOp::ChangeY:
        b.args.push_back(parse_expr(require(j, "value", op)));
        break;
    case BlockOp::GoToXY:
        b.args.push_back(parse_expr(require(j, "x", op)));
        b.args.push_back(parse_expr(require(j, "y", op)));
        break;
    case BlockOp::Say:
        b.args.push_back(parse_expr(require(j, "text", op)));
        break;
    case BlockOp::SayForSeconds:
        b.args.push_back(parse_expr(require(j, "text", op)));
        b.args.push_back(parse_expr(require(j, "secs", op)));
        break;
    case BlockOp::SetVar:
    case BlockOp::ChangeVar:
        b.var = require(j, "var", op).get<std::string>();
        b.args.push_back(parse_expr(require(j, "value", op)));
        break;
    default:
        break;
    }
    return b;
}

std::vector<Block> parse_blocks(const json& j) {
    if (!j.is_array()) throw ProgramError("block list must be an array");
    std::vector<Block> out;
    out.reserve(j.size());
    for (const auto& b : j) out.push_back(parse_block(b));
    return out;
}

std::vector<VariableDef> parse_vars(const json& j) {
    std::vector<VariableDef> out;
    if (!j.is_array()) throw ProgramError("variable list must be an array");
    for (const auto& v : j) {
        out.push_back({require(v, "name", "variable").get<std::string>(),
                       v.value("value", 0.0)});
    }
    return out;
}

json expr_to_json(const Expr& e) {
    switch (e.op) {
    case ExprOp::Num: return e.number;
    case ExprOp::Str: return e.text;
    default: break;
    }
    json j;
    j["op"] = std::string(expr_op_name(e.op));
    switch (e.op) {
    case ExprOp::Var: j["name"] = e.text; break;
    case ExprOp::KeyPressed: j["key"] = e.text; break;
    case ExprOp::TouchingSprite: j["sprite"] = e.text; break;
    case ExprOp::TouchingColor: j["color"] = {e.color.r, e.color.g, e.color.b}; break;
    case ExprOp::PickRandom:
        j["lo"] = expr_to_json(e.args[0]);
        j["hi"] = expr_to_json(e.args[1]);
        break;
    case ExprOp::Not: j["a"] = expr_to_json(e.args[0]); break;
    case ExprOp::Timer:
    case ExprOp::MouseX:
    case ExprOp::MouseY: break;
    default:
        j["a"] = expr_to_json(e.args[0]);
        j["b"] = expr_to_json(e.args[1]);
        break;
    }
    return j;
}

json blocks_to_json(const std::vector<Block>& blocks);

json block_to_json(const Block& b) {
    json j;
    j["op"] = std::string(block_op_name(b.op));
    j["id"] = b.name;
    switch (b.op) {
    case BlockOp::WhenKeyPressed: j["key"] = b.key; break;
    case BlockOp::Forever: j["body"] = blocks_to_json(b.body); break;
    case BlockOp::Repeat:
        j["times"] = expr_to_json(b.args[0]);
        j["body"] = blocks_to_json(b.body);
        break;
    case BlockOp::If:
        j["cond"] = expr_to_json(b.args[0]);
        j["body"] = blocks_to_json(b.body);
        break;
    case BlockOp::IfElse:
        j["cond"] = expr_to_json(b.args[0]);
        j["then"] = blocks_to_json(b.body);
        j["else"] = blocks_to_json(b.else_body);
        break;
    case BlockOp::WaitSeconds: j["secs"] = expr_to_json(b.args[0]); break;
    case BlockOp::SetX:
    case BlockOp::SetY:
    case BlockOp::ChangeX:
    case BlockOp::ChangeY: j["value"] = expr_to_json(b.args[0]); break;
    case BlockOp::GoToXY:
        j["x"] = expr_to_json(b.args[0]);
        j["y"] = expr_to_json(b.args[1]);
        break;
    case BlockOp::Say: j["text"] = expr_to_json(b.args[0]); break;
    case BlockOp::SayForSeconds:
        j["text"] = expr_to_json(b.args[0]);
        j["secs"] = expr_to_json(b.args[1]);
        break;
    case BlockOp::SetVar:
    case BlockOp::ChangeVar:
        j["var"] = b.var;
        j["value"] = expr_to_json(b.args[0]);
        break;
    default: break;
    }
    return j;
}

json blocks_to_json(const std::vector<Block>& blocks) {
    json arr = json::array();
    for (const auto& b : blocks) arr.push_back(block_to_json(b));
    return arr;
}

// Type checking and id assignment.
class Finalizer {
public:
    explicit Finalizer(SpriteProgram& p) : program_(p) {}

    void run() {
        std::set<std::string> sprite_names;
        for (const auto& s : program_.sprites) {
            if (!sprite_names.insert(s.name).second) {
                throw ProgramError("duplicate sprite name '" + s.name + "'");
            }
        }
        check_unique_vars(program_.globals, "global scope");
        program_.block_names.clear();
        for (auto& sprite : program_.sprites) {
            check_unique_vars(sprite.variables, "sprite '" + sprite.name + "'");
            current_ = &sprite;
            for (std::size_t si = 0; si < sprite.scripts.size(); ++si) {
                auto& script = sprite.scripts[si];
                for (std::size_t bi = 0; bi < script.blocks.size(); ++bi) {
                    if (bi > 0 && is_hat(script.blocks[bi].op)) {
                        throw ProgramError("hat block must be the first block of a script in sprite '" +
                                           sprite.name + "'");
                    }
                }
                script_prefix_ = sprite.name + "/" + std::to_string(si) + "/";
                counter_ = 0;
                visit(script.blocks);
            }
        }
    }

private:
    void check_unique_vars(const std::vector<VariableDef>& vars, const std::string& scope) {
        std::set<std::string> names;
        for (const auto& v : vars) {
            if (!names.insert(v.name).second) {
                throw ProgramError("duplicate variable '" + v.name + "' in " + scope);
            }
        }
    }

    bool var_exists(const std::string& name) const {
        auto has = [&](const std::vector<VariableDef>& vs) {
            return std::any_of(vs.begin(), vs.end(), [&](const VariableDef& v) { return v.name == name; });
        };
        return has(current_->variables) || has(program_.globals);
    }

    void visit(std::vector<Block>& blocks) {
        for (auto& b : blocks) {
            if (b.name.empty()) b.name = script_prefix_ + std::to_string(counter_);
            ++counter_;
            if (!names_.insert(b.name).second) {
                throw ProgramError("duplicate block id '" + b.name + "'");
            }
            b.id = static_cast<BlockId>(program_.block_names.size());
            program_.block_names.push_back(b.name);
            check_block(b);
            visit(b.body);
            visit(b.else_body);
        }
    }

    void expect(const Expr& e, ValueType t, std::string_view what) {
        check_expr(e);
        if (expr_type(e) != t) {
            throw ProgramError("type error in expression: " + std::string(what) + " in sprite '" +
                               current_->name + "'");
        }
    }

    void expect_value(const Expr& e, std::string_view what) {
        check_expr(e);
        if (expr_type(e) == ValueType::Boolean) {
            throw ProgramError("type error in expression: " + std::string(what) +
                               " must not be boolean in sprite '" + current_->name + "'");
        }
    }

    void check_expr(const Expr& e) {
        switch (e.op) {
        case ExprOp::Var:
            if (!var_exists(e.text)) throw ProgramError("unknown variable '" + e.text + "'");
            break;
        case ExprOp::TouchingSprite:
            if (program_.sprite_index(e.text) < 0) throw ProgramError("unknown sprite '" + e.text + "'");
            break;
        case ExprOp::PickRandom:
        case ExprOp::Lt:
        case ExprOp::Gt:
        case ExprOp::Add:
        case ExprOp::Sub:
        case ExprOp::Mul:
        case ExprOp::Div:
            for (const auto& a : e.args) expect(a, ValueType::Number, expr_op_name(e.op));
            break;
        case ExprOp::Eq:
            for (const auto& a : e.args) expect_value(a, "= operand");
            break;
        case ExprOp::And:
        case ExprOp::Or:
        case ExprOp::Not:
            for (const auto& a : e.args) expect(a, ValueType::Boolean, expr_op_name(e.op));
            break;
        default:
            break;
        }
    }

    void check_block(const Block& b) {
        const auto what = block_op_name(b.op);
        switch (b.op) {
        case BlockOp::If:
        case BlockOp::IfElse:
            expect(b.args[0], ValueType::Boolean, what);
            break;
        case BlockOp::Say:
            expect_value(b.args[0], what);
            break;
        case BlockOp::SayForSeconds:
            expect_value(b.args[0], what);
            expect(b.args[1], ValueType::Number, what);
            break;
        case BlockOp::SetVar:
        case BlockOp::ChangeVar:
            if (!var_exists(b.var)) throw ProgramError("unknown variable '" + b.var + "'");
            expect(b.args[0], ValueType::Number, what);
            break;
        default:
            for (const auto& a : b.args) expect(a, ValueType::Number, what);
            break;
        }
    }

    SpriteProgram& program_;
    const SpriteDef* current_ = nullptr;
    std::set<std::string> names_;
    std::string script_prefix_;
    int counter_ = 0;
};

}  // namespace

bool Script::has_hat() const { return !blocks.empty() && is_hat(blocks.front().op); }

int SpriteProgram::sprite_index(std::string_view name) const {
    for (std::size_t i = 0; i < sprites.size(); ++i) {
        if (sprites[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

int SpriteProgram::global_index(std::string_view name) const {
    for (std::size_t i = 0; i < globals.size(); ++i) {
        if (globals[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

std::string_view block_op_name(BlockOp op) {
    for (const auto& e : kBlockOps) {
        if (e.op == op) return e.name;
    }
    return "?";
}

ValueType expr_type(const Expr& e) {
    switch (e.op) {
    case ExprOp::Str: return ValueType::Text;
    case ExprOp::KeyPressed:
    case ExprOp::TouchingSprite:
    case ExprOp::TouchingColor:
    case ExprOp::Lt:
    case ExprOp::Gt:
    case ExprOp::Eq:
    case ExprOp::And:
    case ExprOp::Or:
    case ExprOp::Not: return ValueType::Boolean;
    default: return ValueType::Number;
    }
}

std::string normalize_key(std::string_view key) {
    std::string k;
    for (char c : key) k.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    auto strip = [&](std::string_view affix, bool prefix) {
        if (k.size() <= affix.size()) return;
        if (prefix && k.compare(0, affix.size(), affix) == 0) k.erase(0, affix.size());
        if (!prefix && k.compare(k.size() - affix.size(), affix.size(), affix) == 0) {
            k.erase(k.size() - affix.size());
        }
    };
    strip(" arrow", false);
    strip("arrow", true);
    return k;
}

void finalize(SpriteProgram& program) { Finalizer(program).run(); }

SpriteProgram load_program(const json& doc) {
    if (!doc.is_object()) throw ProgramError("program document must be an object");
    SpriteProgram p;
    try {
        if (auto g = doc.find("globals"); g != doc.end()) p.globals = parse_vars(*g);
        const auto& sprites = require(doc, "sprites", "program");
        if (!sprites.is_array()) throw ProgramError("'sprites' must be an array");
        for (const auto& sj : sprites) {
            SpriteDef s;
            s.name = require(sj, "name", "sprite").get<std::string>();
            s.x = sj.value("x", 0.0);
            s.y = sj.value("y", 0.0);
            s.width = sj.value("width", 40.0);
            s.height = sj.value("height", 40.0);
            if (auto c = sj.find("fillColor"); c != sj.end()) s.fill = parse_rgb(*c, s.name);
            s.visible = sj.value("visible", true);
            if (auto v = sj.find("variables"); v != sj.end()) s.variables = parse_vars(*v);
            if (auto scripts = sj.find("scripts"); scripts != sj.end()) {
                for (const auto& script : *scripts) s.scripts.push_back({parse_blocks(script)});
            }
            p.sprites.push_back(std::move(s));
        }
    } catch (const json::exception& e) {
        throw ProgramError(std::string("malformed program document: ") + e.what());
    }
    finalize(p);
    return p;
}

SpriteProgram load_program_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ProgramError(std::string("malformed program document: ") + e.what());
    }
    return load_program(doc);
}

SpriteProgram load_program_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProgramError("cannot open program file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_program_text(ss.str());
}

json program_to_json(const SpriteProgram& program) {
    auto vars = [](const std::vector<VariableDef>& vs) {
        json arr = json::array();
        for (const auto& v : vs) arr.push_back({{"name", v.name}, {"value", v.value}});
        return arr;
    };
    json sprites = json::array();
    for (const auto& s : program.sprites) {
        json sj;
        sj["name"] = s.name;
        sj["x"] = s.x;
        sj["y"] = s.y;
        sj["width"] = s.width;
        sj["height"] = s.height;
        sj["fillColor"] = {s.fill.r, s.fill.g, s.fill.b};
        sj["visible"] = s.visible;
        if (!s.variables.empty()) sj["variables"] = vars(s.variables);
        json scripts = json::array();
        for (const auto& script : s.scripts) scripts.push_back(blocks_to_json(script.blocks));
        sj["scripts"] = scripts;
        sprites.push_back(sj);
    }
    return {{"globals", vars(program.globals)}, {"sprites", sprites}};
}

namespace dsl {

namespace {
Expr unary(ExprOp op, Expr a) {
    Expr e;
    e.op = op;
    e.args.push_back(std::move(a));
    return e;
}
Expr binary(ExprOp op, Expr a, Expr b) {
    Expr e;
    e.op = op;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
}
Expr leaf(ExprOp op, std::string text = {}) {
    Expr e;
    e.op = op;
    e.text = std::move(text);
    return e;
}
Block simple(BlockOp op, std::vector<Expr> args = {}) {
    Block b;
    b.op = op;
    b.args = std::move(args);
    return b;
}
}  // namespace

Expr num(double v) {
    Expr e;
    e.number = v;
    return e;
}
Expr str(std::string s) { return leaf(ExprOp::Str, std::move(s)); }
Expr var(std::string name) { return leaf(ExprOp::Var, std::move(name)); }
Expr timer() { return leaf(ExprOp::Timer); }
Expr pick_random(Expr lo, Expr hi) { return binary(ExprOp::PickRandom, std::move(lo), std::move(hi)); }
Expr key_pressed(std::string key) { return leaf(ExprOp::KeyPressed, normalize_key(key)); }
Expr touching(std::string sprite) { return leaf(ExprOp::TouchingSprite, std::move(sprite)); }
Expr touching_color(Rgb c) {
    Expr e = leaf(ExprOp::TouchingColor);
    e.color = c;
    return e;
}
Expr mouse_x() { return leaf(ExprOp::MouseX); }
Expr mouse_y() { return leaf(ExprOp::MouseY); }
Expr lt(Expr a, Expr b) { return binary(ExprOp::Lt, std::move(a), std::move(b)); }
Expr gt(Expr a, Expr b) { return binary(ExprOp::Gt, std::move(a), std::move(b)); }
Expr eq(Expr a, Expr b) { return binary(ExprOp::Eq, std::move(a), std::move(b)); }
Expr add(Expr a, Expr b) { return binary(ExprOp::Add, std::move(a), std::move(b)); }
Expr sub(Expr a, Expr b) { return binary(ExprOp::Sub, std::move(a), std::move(b)); }
Expr mul(Expr a, Expr b) { return binary(ExprOp::Mul, std::move(a), std::move(b)); }
Expr div(Expr a, Expr b) { return binary(ExprOp::Div, std::move(a), std::move(b)); }
Expr and_(Expr a, Expr b) { return binary(ExprOp::And, std::move(a), std::move(b)); }
Expr or_(Expr a, Expr b) { return binary(ExprOp::Or, std::move(a), std::move(b)); }
Expr not_(Expr a) { return unary(ExprOp::Not, std::move(a)); }

Block when_green_flag() { return simple(BlockOp::WhenGreenFlag); }
Block when_key_pressed(std::string key) {
    Block b = simple(BlockOp::WhenKeyPressed);
    b.key = normalize_key(key);
    return b;
}
Block forever(std::vector<Block> body) {
    Block b = simple(BlockOp::Forever);
    b.body = std::move(body);
    return b;
}
Block repeat(Expr times, std::vector<Block> body) {
    Block b = simple(BlockOp::Repeat, {std::move(times)});
    b.body = std::move(body);
    return b;
}
Block if_(Expr cond, std::vector<Block> body) {
    Block b = simple(BlockOp::If, {std::move(cond)});
    b.body = std::move(body);
    return b;
}
Block if_else(Expr cond, std::vector<Block> then_body, std::vector<Block> else_body) {
    Block b = simple(BlockOp::IfElse, {std::move(cond)});
    b.body = std::move(then_body);
    b.else_body = std::move(else_body);
    return b;
}
Block wait(Expr seconds) { return simple(BlockOp::WaitSeconds, {std::move(seconds)}); }
Block set_x(Expr v) { return simple(BlockOp::SetX, {std::move(v)}); }
Block set_y(Expr v) { return simple(BlockOp::SetY, {std::move(v)}); }
Block change_x(Expr v) { return simple(BlockOp::ChangeX, {std::move(v)}); }
Block change_y(Expr v) { return simple(BlockOp::ChangeY, {std::move(v)}); }
Block go_to(Expr x, Expr y) { return simple(BlockOp::GoToXY, {std::move(x), std::move(y)}); }
Block say(Expr text) { return simple(BlockOp::Say, {std::move(text)}); }
Block say_for(Expr text, Expr seconds) {
    return simple(BlockOp::SayForSeconds, {std::move(text), std::move(seconds)});
}
Block set_var(std::string name, Expr v) {
    Block b = simple(BlockOp::SetVar, {std::move(v)});
    b.var = std::move(name);
    return b;
}
Block change_var(std::string name, Expr v) {
    Block b = simple(BlockOp::ChangeVar, {std::move(v)});
    b.var = std::move(name);
    return b;
}
Block show() { return simple(BlockOp::Show); }
Block hide() { return simple(BlockOp::Hide); }
Block reset_timer() { return simple(BlockOp::ResetTimer); }
Block stop_all() { return simple(BlockOp::StopAll); }
Block stop_script() { return simple(BlockOp::StopScript); }

}  // namespace dsl

}  // namespace mbt
