// rng.hpp — SplitMix64 generator (Steele/Lea/Vigna 2014), fully specified here so
// every sweep and sampler is bit-reproducible across platforms and compilers.

#pragma once

#include <cstdint>

namespace ctqw {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, bound) via rejection. bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Derive an independent stream: runs `salt` through the output mixer so
    // (seed, r, sample) triples map to decorrelated substreams.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
        SplitMix64 g(seed ^ (salt * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
        return g.next();
    }

private:
    std::uint64_t state_;
};

} // namespace ctqw
