#pragma once

// Deterministic, platform-independent pseudo-randomness.
//
// Standard-library engines are specified bit-exactly but the *distributions*
// are not; every report in this project must be byte-identical for a fixed
// seed across compilers, so all draws go through this splitmix64-based
// generator with hand-rolled range reduction.

#include <cstdint>

namespace qv {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        // splitmix64 step (public-domain constants).
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, n). n = 0 returns 0.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        // Rejection sampling removes modulo bias; loop runs < 2 times on average.
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % n;
    }

    /// Uniform integer in [lo, hi] inclusive.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next_u64() & 1u) != 0; }

    /// Independent child stream for item `index`; the derivation is a pure
    /// function of (parent seed, index), so parallel consumers can draw in
    /// any order without perturbing each other.
    Rng child(std::uint64_t index) const {
        Rng mix(state_ ^ (0xa0761d6478bd642fULL + index * 0xe7037ed1a0b428dbULL));
        mix.next_u64();
        return mix;
    }

private:
    std::uint64_t state_;
};

} // namespace qv
