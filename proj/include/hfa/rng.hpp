#pragma once

#include <cstdint>

#include "hfa/normal.hpp"

namespace hfa {

// Splittable 64-bit generator. Substreams are derived by hashing
// (seed, replicate, stream id), so replicate k is reproducible in
// isolation and results do not depend on scheduling or thread count.
// Normal variates use the inverse-CDF transform: one uniform per draw,
// identical output on every platform.

inline uint64_t hash_u64(uint64_t z) {
    z ^= z >> 33;
    z *= 0xFF51AFD7ED558CCDull;
    z ^= z >> 33;
    z *= 0xC4CEB9FE1A85EC53ull;
    z ^= z >> 33;
    return z;
}

class Stream {
  public:
    explicit Stream(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Strictly inside (0, 1): (k + 0.5) * 2^-53 for k in [0, 2^53).
    double next_uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_normal() { return normal_quantile(next_uniform01()); }

  private:
    uint64_t state_;
};

// Named substreams per replicate. Keeping alpha isolated from beta and
// epsilon makes the two generation scenarios comparable draw-for-draw.
enum class StreamId : uint64_t {
    Alpha = 1,
    Beta = 2,
    Epsilon = 3,
    MatchLevel = 4,
};

inline Stream substream(uint64_t seed, uint64_t replicate, StreamId id) {
    return Stream(seed ^ hash_u64(hash_u64(replicate + 1) + static_cast<uint64_t>(id)));
}

}  // namespace hfa
