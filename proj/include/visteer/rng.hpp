#pragma once

// Counter-based deterministic random numbers.
//
// Everything stochastic in this library draws from one of these streams so
// that results are reproducible bit-for-bit from a single root seed:
//
//   word(i)       = mix64(stream_seed + (i + 1) * GOLDEN)
//   stream_seed   = mix64(root_seed ^ mix64(fnv1a64(label)))
//
// mix64 is the SplitMix64 finalizer. Because each word is a pure function of
// (seed, counter), streams can be split by label without any shared state and
// draws are insensitive to evaluation order.

#include <cstdint>
#include <string_view>

namespace visteer::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Derives an independent stream seed from a root seed and a label.
inline constexpr std::uint64_t split(std::uint64_t root_seed, std::string_view label) {
    return mix64(root_seed ^ mix64(fnv1a64(label)));
}

class Stream {
  public:
    explicit Stream(std::uint64_t seed) : seed_(seed) {}
    Stream(std::uint64_t root_seed, std::string_view label) : seed_(split(root_seed, label)) {}

    std::uint64_t next_u64() { return at(counter_++); }

    // i-th word of the stream, independent of the cursor.
    std::uint64_t at(std::uint64_t i) const { return mix64(seed_ + (i + 1) * kGolden); }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform float in [-bound, bound], 24 random bits.
    float next_symmetric(float bound) {
        const float u = static_cast<float>(next_u64() >> 40) * 0x1.0p-24f;  // [0, 1)
        return (2.0f * u - 1.0f) * bound;
    }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace visteer::rng
