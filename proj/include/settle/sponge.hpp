#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "settle/field.hpp"

namespace settle {

/// Algebraic sponge parameters. The hash is Poseidon-shaped (x^e S-box, full
/// rounds, MDS mix) with constants derived from a seed. It preserves the H_k
/// interface circuits need but is NOT a vetted cryptographic parameter set;
/// treat digests as simulation values, not security guarantees.
struct HashConfig {
    unsigned max_arity = 16; // kappa, in [2, 16]
    unsigned rounds = 8;     // full rounds
    unsigned sbox_exponent = 5;
    std::uint64_t constant_seed = 0x7365ed0a11ce5eedULL;

    bool operator==(const HashConfig&) const = default;
};

/// The H_k(.) family: hash(k inputs) for 1 <= k <= max_arity. Identical config
/// gives identical digests. Pure and immutable after construction.
class Sponge {
public:
    explicit Sponge(const HashConfig& cfg = {});

    const HashConfig& config() const { return cfg_; }

    Fe hash(std::span<const Fe> inputs) const;
    Fe hash2(const Fe& a, const Fe& b) const;
    Fe hash3(const Fe& a, const Fe& b, const Fe& c) const;

    void permute(std::span<Fe> state) const;

    // Table access for the in-circuit twin; indices must match permute().
    const Fe& round_constant(unsigned width, unsigned round, unsigned lane) const;
    const std::vector<std::vector<Fe>>& mds(unsigned width) const;

    static unsigned width_for_arity(unsigned arity) { return arity + 1; }

private:
    HashConfig cfg_;
    // Indexed by width (2..max_arity+1); slot 0/1 unused.
    std::vector<std::vector<std::vector<Fe>>> rc_;  // [width][round][lane]
    std::vector<std::vector<std::vector<Fe>>> mds_; // [width][row][col]
};

} // namespace settle
