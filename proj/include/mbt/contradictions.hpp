#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mbt/checks.hpp"
#include "mbt/model.hpp"

namespace mbt {

struct PendingEffect {
    std::string model_id;
    std::string edge_id;
    Check effect;
    // When present, targets are compared by their resolved sprite/variable.
    const CompiledCheck* compiled = nullptr;
};

struct ContradictionPair {
    std::size_t first = 0;
    std::size_t second = 0;
    std::string reason;
};

// Half-open/closed interval over the reals described by "x op value".
struct Interval {
    double lo = -INFINITY;
    bool lo_closed = false;
    double hi = INFINITY;
    bool hi_closed = false;

    bool empty() const;
    bool contains(double v) const;
    Interval intersect(const Interval& o) const;
};

// Solution set of `x op value`, with negation applied. Returns nullopt for
// "!=", which is not an interval.
std::optional<Interval> solution_interval(const std::string& op, double value, bool negated);

// Non-empty reason when a and b cannot both hold.
std::optional<std::string> contradiction_reason(const PendingEffect& a, const PendingEffect& b);

// Every unordered pair (i < j) of mutually unsatisfiable effects.
std::vector<ContradictionPair> detect_contradictions(const std::vector<PendingEffect>& pending);

}  // namespace mbt
