#pragma once

#include <cstdint>

namespace fcdtt {

// splitmix64 step; passes through a full-period 64-bit state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (0x9E3779B97F4A7C15ULL + (b << 6) + (b >> 2));
    return splitmix64(s);
}

// Deterministic counter-free random stream. Streams derived from distinct
// (seed, id...) tuples are decorrelated, so simulation run r can use its own
// stream and results do not depend on execution order.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {
        // burn-in so nearby seeds diverge immediately
        splitmix64(state_);
    }

    RandomStream(std::uint64_t seed, std::uint64_t stream_id)
        : RandomStream(mix_key(seed, stream_id)) {}

    RandomStream(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
        : RandomStream(mix_key(mix_key(seed, a), b)) {}

    RandomStream(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                 std::uint64_t c)
        : RandomStream(mix_key(mix_key(mix_key(seed, a), b), c)) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in [0, 1)
    double next_uniform() {
        return double(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in [lo, hi)
    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_uniform();
    }

private:
    std::uint64_t state_;
};

} // namespace fcdtt
