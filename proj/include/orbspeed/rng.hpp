// Deterministic per-walk random streams: each walk derives its generator
// from (seed, walk index) by splitmix64-style mixing, so estimates do not
// depend on how walks are partitioned across workers.

#pragma once

#include <cstdint>

namespace orbspeed {

inline uint64_t mix64(uint64_t z)
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class WalkRng {
public:
    WalkRng(uint64_t seed, uint64_t index)
        : state_(mix64(seed ^ mix64(index + 0x632BE59BD9B4E019ULL))) {}

    uint64_t next()
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

} // namespace orbspeed
