#include "mbt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mbt {

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double r = (static_cast<double>(i + j) / 2.0) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

namespace {

double rank_sum_first(std::span<const double> a, std::span<const double> b) {
    std::vector<double> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    const auto ranks = average_ranks(all);
    return std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), 0.0);
}

void require_nonempty(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
}

}  // namespace

double a12(std::span<const double> a, std::span<const double> b) {
    require_nonempty(a, b);
    const double m = static_cast<double>(a.size());
    const double n = static_cast<double>(b.size());
    const double r1 = rank_sum_first(a, b);
    return (r1 / m - (m + 1) / 2) / n;
}

double mann_whitney_p(std::span<const double> a, std::span<const double> b) {
    require_nonempty(a, b);
    const double m = static_cast<double>(a.size());
    const double n = static_cast<double>(b.size());
    const double N = m + n;
    const double u1 = rank_sum_first(a, b) - m * (m + 1) / 2;
    const double u = std::max(u1, m * n - u1);
    const double mu = m * n / 2;

    std::vector<double> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    double ties = 0;
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        while (j < all.size() && all[j] == all[i]) ++j;
        const double t = static_cast<double>(j - i);
        ties += t * t * t - t;
        i = j;
    }
    const double var = m * n / 12 * ((N + 1) - (N > 1 ? ties / (N * (N - 1)) : 0.0));
    if (!(var > 0)) return 1.0;
    const double z = (u - mu - 0.5) / std::sqrt(var);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

double mean(std::span<const double> v) {
    if (v.empty()) return 0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace mbt
