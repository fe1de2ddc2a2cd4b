#pragma once

#include <cstdint>

namespace settle {

/// splitmix64 stream. Used everywhere a seeded deterministic stream is needed;
/// output is fixed across platforms, unlike <random> distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound). bound must be nonzero. Rejection-sampled, unbiased.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform in [lo, hi] inclusive.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    /// One-shot mix of independent words into a stream seed.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0, std::uint64_t d = 0) {
        Rng r(a);
        std::uint64_t s = r.next() ^ b;
        Rng r2(s);
        s = r2.next() ^ c;
        Rng r3(s);
        return r3.next() ^ d * 0x2545f4914f6cdd1dULL;
    }

private:
    std::uint64_t state_;
};

} // namespace settle
