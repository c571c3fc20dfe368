#pragma once

// Seeded randomness with a fixed, platform-independent output sequence.
//
// std::mt19937_64 is specified bit-for-bit by the standard; the standard
// distributions are not, so bounded draws use rejection sampling on the raw
// engine output instead.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace maxai {

class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (true) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    /// k distinct values drawn uniformly from {1..n}, returned ascending.
    std::vector<std::size_t> subset(std::size_t n, std::size_t k);

private:
    std::mt19937_64 engine_;
};

/// A nonzero seed from std::random_device, used when the caller passes seed 0.
std::uint64_t entropy_seed();

}  // namespace maxai
