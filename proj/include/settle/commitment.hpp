#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "settle/circuits.hpp"
#include "settle/gadgets.hpp"
#include "settle/keys.hpp"

namespace settle {

/// Cumulative reward allocation matrix. Row = participant, column = round
/// (round k lives in column k-1); everything outside the effective ranges is
/// zero padding. Entries are token amounts, kept far below the field modulus
/// so row sums cannot wrap.
struct RewardMatrix {
    gadgets::MatVal values; // N x T
    size_t effective_rounds = 0;
    size_t effective_participants = 0;

    static RewardMatrix zero(size_t n, size_t t);
    size_t max_participants() const { return values.size(); }
    size_t max_rounds() const { return values.empty() ? 0 : values[0].size(); }
    /// Copy with columns >= covered zeroed.
    RewardMatrix sliced(size_t covered) const;
    Fe row_sum(size_t i) const;
    /// True iff all entries beyond column `covered-1` are zero.
    bool masked_to(size_t covered) const;
};

struct ParticipantRoster {
    std::vector<Fe> addresses; // length N, zero in padding slots
    size_t effective = 0;
};

/// One round's on-chain commitment plus its broadcast signature.
struct CommitmentRecord {
    Fe c;
    std::uint64_t round = 0; // commitment covers `round` columns
    Signature sig;
};

Fe commitment_of(const Sponge& sponge, const RewardMatrix& v, const ParticipantRoster& p, const Fe& rho);

/// Builds and signs the round-r commitment. The matrix must be cumulative
/// through round r (columns >= r all zero); throws Errc::mask_violation
/// otherwise.
CommitmentRecord commit_round(const Sponge& sponge, const RewardMatrix& v, const ParticipantRoster& p, const Fe& rho,
                              const KeyPair& key, std::uint64_t round);

enum class RejectReason { hash_mismatch, bad_signature, missing_reward };
const char* reject_reason_name(RejectReason r);

struct CheckOutcome {
    bool accepted = false;
    RejectReason reason = RejectReason::hash_mismatch;
};

/// Everything a participant holds after the off-chain sync for a round.
struct LocalView {
    RewardMatrix v;
    ParticipantRoster roster;
    Fe rho;
    PublicKey pk;
    size_t own_index = 0;
    /// Reward this participant knows it earned in the synced round; used for
    /// the withheld-reward check. Zero disables that check.
    Fe expected_reward;
};

/// The per-round check()/verify() step: accept iff the recomputed commitment
/// matches the on-chain value, the broadcast signature verifies, and the
/// participant's own reward is present. Total function.
CheckOutcome participant_check(const Sponge& sponge, const Fe& onchain_c, const CommitmentRecord& broadcast,
                               const LocalView& view);

} // namespace settle
