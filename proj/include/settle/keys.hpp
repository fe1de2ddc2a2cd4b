#pragma once

#include <cstdint>

#include "settle/field.hpp"
#include "settle/sponge.hpp"

namespace settle {

struct PublicKey {
    Fe x, y;
    bool operator==(const PublicKey&) const = default;
};

struct KeyPair {
    Fe sk;
    PublicKey pk;
};

/// Hash-binding attribution record. The tuple (s1, s2) is derived from the key
/// and message; `opening` carries the key material needed to recheck it, so the
/// scheme authenticates broadcast data and is verifiable in-circuit, but gives
/// no secrecy or unforgeability. Simulation stand-in, not a real signature.
struct Signature {
    Fe s1, s2;
    Fe opening; // equals the signing key
    bool operator==(const Signature&) const = default;
};

KeyPair keygen(const Sponge& sponge, std::uint64_t seed);
PublicKey public_key_of(const Sponge& sponge, const Fe& sk);
Signature sign(const Sponge& sponge, const Fe& sk, const Fe& message);
bool verify_sig(const Sponge& sponge, const PublicKey& pk, const Signature& sig, const Fe& message);

/// On-chain key digest h_A = H_2(A_x, A_y).
Fe pk_digest(const Sponge& sponge, const PublicKey& pk);

} // namespace settle
