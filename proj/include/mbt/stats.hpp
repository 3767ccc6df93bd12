#pragma once

#include <span>
#include <vector>

namespace mbt {

// Vargha-Delaney A12: probability that a draw from `a` exceeds one from `b`,
// ties counting one half. Throws std::invalid_argument on an empty sample.
double a12(std::span<const double> a, std::span<const double> b);

// Two-sided Mann-Whitney U test p-value: normal approximation with tie and
// continuity correction. Returns 1 when the variance vanishes.
double mann_whitney_p(std::span<const double> a, std::span<const double> b);

// Average ranks (1-based) of `values`, ties sharing the mean rank.
std::vector<double> average_ranks(std::span<const double> values);

double mean(std::span<const double> v);

}  // namespace mbt
