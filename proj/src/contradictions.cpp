#include "mbt/contradictions.hpp"

#include <cctype>
#include <cmath>

namespace mbt {

namespace {

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// Identity of the value a check reads: resolved reference when compiled,
// otherwise the lowercase target/name text.
struct ValueKey {
    std::optional<ValueRef> ref;
    std::string text;

    bool operator==(const ValueKey& o) const {
        if (ref && o.ref) return *ref == *o.ref;
        return text == o.text;
    }
};

bool has_value(const Check& c) {
    switch (c.kind) {
    case CheckKind::AttrComp: return c.args.size() == 4;
    case CheckKind::AttrChange:
    case CheckKind::VarComp:
    case CheckKind::VarChange:
    case CheckKind::Unchanged: return true;
    default: return false;
    }
}

ValueKey value_key(const PendingEffect& p) {
    ValueKey k;
    if (p.compiled && p.compiled->value.resolved()) k.ref = p.compiled->value;
    k.text = lower(arg_text(p.effect, 0)) + "|" + lower(arg_text(p.effect, 1));
    return k;
}

bool same_sprite(const PendingEffect& a, const PendingEffect& b) {
    if (a.compiled && b.compiled && a.compiled->sprite >= 0 && b.compiled->sprite >= 0) {
        return a.compiled->sprite == b.compiled->sprite;
    }
    return lower(arg_text(a.effect, 0)) == lower(arg_text(b.effect, 0));
}

// Sign of a change check: +1, -1, 0 for "=" and nullopt for unknown.
std::optional<double> change_delta(const Check& c, int& sign) {
    const std::string d = arg_text(c, 2);
    if (d == "+") { sign = 1; return std::nullopt; }
    if (d == "-") { sign = -1; return std::nullopt; }
    if (d == "=") { sign = 0; return 0.0; }
    const double v = arg_number(c, 2);
    sign = v > 0 ? 1 : v < 0 ? -1 : 0;
    return v;
}

std::optional<std::string> ordered_reason(const PendingEffect& pa, const PendingEffect& pb) {
    const Check& a = pa.effect;
    const Check& b = pb.effect;

    if (a.kind == b.kind && a.args == b.args && a.negated != b.negated) {
        return "opposite negation of " + describe(a);
    }
    if (a.kind == CheckKind::Output && b.kind == CheckKind::NoOutput && !a.negated && !b.negated &&
        same_sprite(pa, pb) && (b.args.size() == 1 || lower(arg_text(a, 1)) == lower(arg_text(b, 1)))) {
        return "output and no output on the same sprite";
    }
    if (!has_value(a) || !has_value(b) || !(value_key(pa) == value_key(pb))) return std::nullopt;

    const bool a_change = a.kind == CheckKind::AttrChange || a.kind == CheckKind::VarChange;
    const bool b_change = b.kind == CheckKind::AttrChange || b.kind == CheckKind::VarChange;
    if (a_change && b_change && a.kind == b.kind && !a.negated && !b.negated) {
        int sa = 0, sb = 0;
        const auto da = change_delta(a, sa);
        const auto db = change_delta(b, sb);
        if (sa != sb) return "opposite changes of the same value";
        if (da && db && *da != *db) return "different exact changes of the same value";
    }
    if (a.kind == CheckKind::Unchanged && !a.negated && b_change && !b.negated) {
        int sb = 0;
        change_delta(b, sb);
        if (sb != 0) return "unchanged and changing value";
    }
    const bool a_cmp = a.kind == CheckKind::AttrComp || a.kind == CheckKind::VarComp;
    if (a_cmp && a.kind == b.kind) {
        const auto ia = solution_interval(arg_text(a, 2), arg_number(a, 3), a.negated);
        const auto ib = solution_interval(arg_text(b, 2), arg_number(b, 3), b.negated);
        if (ia && ib && ia->intersect(*ib).empty()) return "comparison ranges do not intersect";
        // x != v against x = v
        if (!ia && ib && ib->lo == ib->hi && ib->lo == arg_number(a, 3)) return "comparison ranges do not intersect";
    }
    return std::nullopt;
}

}  // namespace

bool Interval::empty() const {
    if (lo > hi) return true;
    if (lo == hi) return !(lo_closed && hi_closed);
    return false;
}

bool Interval::contains(double v) const {
    const bool above = lo_closed ? v >= lo : v > lo;
    const bool below = hi_closed ? v <= hi : v < hi;
    return above && below;
}

Interval Interval::intersect(const Interval& o) const {
    Interval r = *this;
    if (o.lo > r.lo || (o.lo == r.lo && !o.lo_closed)) {
        r.lo = o.lo;
        r.lo_closed = o.lo_closed;
    }
    if (o.hi < r.hi || (o.hi == r.hi && !o.hi_closed)) {
        r.hi = o.hi;
        r.hi_closed = o.hi_closed;
    }
    return r;
}

std::optional<Interval> solution_interval(const std::string& op_in, double v, bool negated) {
    std::string op = op_in == "==" ? "=" : op_in;
    if (negated) {
        if (op == "<") op = ">=";
        else if (op == "<=") op = ">";
        else if (op == ">") op = "<=";
        else if (op == ">=") op = "<";
        else return std::nullopt;
    }
    Interval i;
    if (op == "<") { i.hi = v; }
    else if (op == "<=") { i.hi = v; i.hi_closed = true; }
    else if (op == ">") { i.lo = v; }
    else if (op == ">=") { i.lo = v; i.lo_closed = true; }
    else { i.lo = i.hi = v; i.lo_closed = i.hi_closed = true; }
    return i;
}

std::optional<std::string> contradiction_reason(const PendingEffect& a, const PendingEffect& b) {
    if (auto r = ordered_reason(a, b)) return r;
    return ordered_reason(b, a);
}

std::vector<ContradictionPair> detect_contradictions(const std::vector<PendingEffect>& pending) {
    std::vector<ContradictionPair> out;
    for (std::size_t i = 0; i < pending.size(); ++i) {
        for (std::size_t j = i + 1; j < pending.size(); ++j) {
            if (auto r = contradiction_reason(pending[i], pending[j])) out.push_back({i, j, *r});
        }
    }
    return out;
}

}  // namespace mbt
