#pragma once

#include <cstdint>

namespace mbt {

// SplitMix64 stream. Small, portable and fully reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64();

    // Uniform double in [0, 1).
    double next_double();

    // Uniform integer in [lo, hi] (inclusive). Requires lo <= hi.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi);

    std::uint64_t state() const { return state_; }

    bool operator==(const Rng&) const = default;

private:
    std::uint64_t state_;
};

// Derives an independent seed for substream `stream` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace mbt
