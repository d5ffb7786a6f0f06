#pragma once

#include <cstdint>
#include <initializer_list>

// Counter-based seeded randomness built on splitmix64 (Steele, Lea, Flood 2014).
// Every draw is derived from (seed, i, j, purpose) so that generation is
// order-independent and bit-reproducible across platforms.

namespace spectrank::rng {

// Domain separation tags for independent draws sharing one seed.
enum : std::uint64_t {
    kTagEdgeUniform = 0x45444745u,   // per-pair U_ij for graph sampling / coupling
    kTagComparisons = 0x434f4d50u,   // per-edge comparison outcome streams
    kTagModelGen = 0x4d4f444cu,      // score-vector generation
    kTagTrialSeed = 0x54524941u,     // per-(n, trial) experiment seeds
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Chained hash of several words; injective enough for our key spaces.
constexpr std::uint64_t mix(std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = 0x2545f4914f6cdd1dull;
    for (std::uint64_t w : words) h = splitmix64(h ^ splitmix64(w));
    return h;
}

constexpr double to_u01(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// One uniform in [0,1) keyed by (seed, i, j, tag); i<j by convention.
inline double pair_uniform(std::uint64_t seed, std::uint64_t i, std::uint64_t j,
                           std::uint64_t tag) {
    return to_u01(mix({seed, tag, i, j}));
}

// Sequential stream for draws that need more than one uniform.
class Stream {
  public:
    explicit Stream(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double next_u01() { return to_u01(next_u64()); }

  private:
    std::uint64_t state_;
};

inline Stream pair_stream(std::uint64_t seed, std::uint64_t i, std::uint64_t j,
                          std::uint64_t tag) {
    return Stream(mix({seed, tag, i, j}));
}

}  // namespace spectrank::rng
