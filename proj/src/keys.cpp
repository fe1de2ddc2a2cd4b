#include "settle/keys.hpp"

#include "settle/rng.hpp"

namespace settle {

PublicKey public_key_of(const Sponge& sponge, const Fe& sk) {
    return PublicKey{sponge.hash2(sk, fe(1)), sponge.hash2(sk, fe(2))};
}

KeyPair keygen(const Sponge& sponge, std::uint64_t seed) {
    Rng rng(Rng::mix(0x6b65796b65796b65ULL, seed));
    Fe sk = Fe::random(rng);
    while (sk.is_zero()) sk = Fe::random(rng);
    return KeyPair{sk, public_key_of(sponge, sk)};
}

Signature sign(const Sponge& sponge, const Fe& sk, const Fe& message) {
    return Signature{sponge.hash3(sk, message, fe(1)), sponge.hash3(sk, message, fe(2)), sk};
}

bool verify_sig(const Sponge& sponge, const PublicKey& pk, const Signature& sig, const Fe& message) {
    if (public_key_of(sponge, sig.opening) != pk) return false;
    return sig.s1 == sponge.hash3(sig.opening, message, fe(1)) &&
           sig.s2 == sponge.hash3(sig.opening, message, fe(2));
}

Fe pk_digest(const Sponge& sponge, const PublicKey& pk) { return sponge.hash2(pk.x, pk.y); }

} // namespace settle
