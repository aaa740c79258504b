#pragma once

#include <cstdint>
#include <random>

namespace fluidipa {

// SplitMix64 finalizer (Steele, Lea, Flood / Vigna).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed for stream `index` under `base_seed`. Used for replications,
// optimizer iterations and sweep cases alike.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
    return splitmix64(base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// Portable random stream: mt19937_64 (fully specified by the standard)
// seeded with splitmix64(seed). Variates are produced by explicit
// transforms so results do not depend on the standard library vendor.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    // Uniform on [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Exponential with the given rate, by inverse CDF.
    double exponential(double rate);

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace fluidipa
