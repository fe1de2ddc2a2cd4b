#include "settle/commitment.hpp"

#include "settle/errors.hpp"

namespace settle {

RewardMatrix RewardMatrix::zero(size_t n, size_t t) {
    RewardMatrix m;
    m.values.assign(n, std::vector<Fe>(t));
    return m;
}

RewardMatrix RewardMatrix::sliced(size_t covered) const {
    RewardMatrix out = *this;
    for (auto& row : out.values)
        for (size_t c = covered; c < row.size(); ++c) row[c] = Fe();
    out.effective_rounds = std::min(effective_rounds, covered);
    return out;
}

Fe RewardMatrix::row_sum(size_t i) const {
    Fe acc;
    for (const Fe& cell : values[i]) acc += cell;
    return acc;
}

bool RewardMatrix::masked_to(size_t covered) const {
    for (const auto& row : values)
        for (size_t c = covered; c < row.size(); ++c)
            if (!row[c].is_zero()) return false;
    return true;
}

Fe commitment_of(const Sponge& sponge, const RewardMatrix& v, const ParticipantRoster& p, const Fe& rho) {
    return gadgets::commitment_eval(sponge, v.values, p.addresses, rho);
}

CommitmentRecord commit_round(const Sponge& sponge, const RewardMatrix& v, const ParticipantRoster& p, const Fe& rho,
                              const KeyPair& key, std::uint64_t round) {
    if (!v.masked_to(round))
        fail(Errc::mask_violation, "matrix has rewards beyond round " + std::to_string(round));
    CommitmentRecord rec;
    rec.round = round;
    rec.c = commitment_of(sponge, v, p, rho);
    rec.sig = sign(sponge, key.sk, rec.c);
    return rec;
}

const char* reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::hash_mismatch: return "hash-mismatch";
        case RejectReason::bad_signature: return "bad-signature";
        case RejectReason::missing_reward: return "missing-reward";
    }
    return "?";
}

CheckOutcome participant_check(const Sponge& sponge, const Fe& onchain_c, const CommitmentRecord& broadcast,
                               const LocalView& view) {
    Fe recomputed = commitment_of(sponge, view.v, view.roster, view.rho);
    if (recomputed != onchain_c || broadcast.c != onchain_c) return {false, RejectReason::hash_mismatch};
    if (!verify_sig(sponge, view.pk, broadcast.sig, broadcast.c)) return {false, RejectReason::bad_signature};
    if (!view.expected_reward.is_zero() && broadcast.round >= 1) {
        const Fe& recorded = view.v.values[view.own_index][broadcast.round - 1];
        if (recorded != view.expected_reward) return {false, RejectReason::missing_reward};
    }
    return {true, RejectReason::hash_mismatch};
}

} // namespace settle
