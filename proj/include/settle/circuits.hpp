#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "settle/gadgets.hpp"
#include "settle/keys.hpp"
#include "settle/r1cs.hpp"
#include "settle/sponge.hpp"

namespace settle {

/// Deployment-wide circuit dimensions, fixed at build time. Every instance of
/// one deployment shares them.
struct CircuitParams {
    size_t max_rounds = 4;        // T
    size_t max_participants = 4;  // N
    size_t batch_size = 2;        // B
    HashConfig hash;

    bool operator==(const CircuitParams&) const = default;
};

enum class CircuitKind { transition, challenge, distribution };
const char* circuit_kind_name(CircuitKind kind);

/// A built verifier circuit: sealed constraint system plus a digest binding
/// instances to this exact shape. Immutable; safe to verify against from many
/// threads.
class Circuit {
public:
    static Circuit build(CircuitKind kind, const CircuitParams& params, const Sponge& sponge);

    CircuitKind kind() const { return kind_; }
    const CircuitParams& params() const { return params_; }
    const ConstraintSystem& cs() const { return cs_; }
    const Fe& shape_digest() const { return shape_digest_; }
    size_t public_count() const { return cs_.public_count(); }
    std::uint32_t salt_var() const { return salt_var_; }

private:
    friend struct CircuitProgram;
    CircuitKind kind_{};
    CircuitParams params_{};
    ConstraintSystem cs_;
    Fe shape_digest_;
    std::uint32_t salt_var_ = 0;
};

Fe circuit_shape_digest(CircuitKind kind, const CircuitParams& params, const Sponge& sponge);

/// The simulated proof object: a witness that satisfies the circuit, together
/// with its public slice. The verifier rechecks satisfaction directly.
struct SatisfiedInstance {
    CircuitKind kind{};
    Fe shape_digest;
    std::vector<Fe> public_inputs; // public-variable allocation order
    Witness witness;
    /// Witness slots not pinned by constraints (don't-cares); test metadata.
    std::vector<std::uint32_t> free_vars;
};

// Public-input layouts, in allocation order.
struct TransitionPublics {
    Fe round, c1, c2, h_agg;
    std::vector<Fe> to_vector() const { return {round, c1, c2, h_agg}; }
};
struct ChallengePublics {
    Fe round, c, h_agg;
    std::vector<Fe> to_vector() const { return {round, c, h_agg}; }
};
struct DistributionPublics {
    Fe round, batch, c, h_agg;
    std::vector<Fe> rewards;      // s_p, length B
    std::vector<Fe> participants; // p_p, length B
    std::vector<Fe> to_vector() const;
    static DistributionPublics from_span(std::span<const Fe> publics, size_t batch_size);
};

struct TransitionInputs {
    std::uint64_t round = 0; // proves C_round -> C_{round+1}
    gadgets::MatVal v2;      // N x T cumulative matrix behind C_{round+1}
    std::vector<Fe> p2;      // roster, zero-padded to N
    std::uint64_t p1_count = 0;
    Fe rho;
    KeyPair key;
};

struct ChallengeInputs {
    std::uint64_t round = 0; // the opened commitment covers `round` columns
    gadgets::MatVal v;
    std::vector<Fe> p;
    Fe rho;
    PublicKey pk;
    Signature sig; // captured broadcast signature
};

struct DistributionInputs {
    std::uint64_t round = 0; // committed column count
    std::uint64_t batch = 0;
    gadgets::MatVal v;
    std::vector<Fe> p;
    Fe rho;
    PublicKey pk;
    Signature sig;
};

/// Witness generation; throws Errc::witness_generation_failed when the inputs
/// cannot satisfy the circuit (honest-prover-side error, distinct from a
/// verification failure on an adversarial instance).
SatisfiedInstance prove_transition(const Circuit& circuit, const Sponge& sponge, const TransitionInputs& in);
SatisfiedInstance prove_challenge(const Circuit& circuit, const Sponge& sponge, const ChallengeInputs& in);
SatisfiedInstance prove_distribution(const Circuit& circuit, const Sponge& sponge, const DistributionInputs& in);

/// True iff the witness satisfies the circuit and the instance's public slice
/// equals `expected_publics` element-wise. Throws Errc::shape_mismatch if the
/// instance was built for a different shape.
bool verify_instance(const Circuit& circuit, const SatisfiedInstance& instance, std::span<const Fe> expected_publics);

// Self-describing text envelope for replay files.
std::string instance_to_text(const SatisfiedInstance& instance);
SatisfiedInstance instance_from_text(std::string_view text);

} // namespace settle
