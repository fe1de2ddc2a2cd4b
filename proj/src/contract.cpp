#include "settle/contract.hpp"

#include "settle/errors.hpp"

namespace settle {

const char* variant_name(Variant v) { return v == Variant::challenge ? "challenge" : "proof"; }
const char* mode_name(Mode m) { return m == Mode::one_shot ? "one-shot" : "multi-shot"; }

const char* status_name(Status s) {
    switch (s) {
        case Status::committed: return "Committed";
        case Status::reward_init: return "RewardInit";
        case Status::challenged: return "Challenged";
        case Status::distributing: return "Distributing";
        case Status::distributed: return "Distributed";
    }
    return "?";
}

SettlementContract::SettlementContract(Ledger& ledger, Address owner, const ContractParams& params,
                                       const Verifiers& verifiers)
    : ledger_(ledger), owner_(owner), params_(params), verifiers_(verifiers) {
    self_ = ledger_.create_account("contract", 0);
    st_.commitments.push_back(params_.genesis_commitment);
    if (params_.mode == Mode::multi_shot && verifiers_.distribution) {
        size_t n = verifiers_.distribution->params().max_participants;
        size_t b = verifiers_.distribution->params().batch_size;
        st_.paid_batches.assign((n + b - 1) / b, false);
    } else {
        st_.paid_batches.assign(1, false);
    }
    st_.last_activity = ledger_.now();
}

Wei SettlementContract::bond_held(Address challenger) const {
    auto it = st_.bonds.find(challenger);
    return it == st_.bonds.end() ? 0 : it->second;
}

Wei SettlementContract::required_bond() const {
    if (params_.challenge_bond) return params_.challenge_bond;
    return (Wei)10 * ledger_.config().gas.challenge_first * ledger_.config().gas_price_wei;
}

std::int64_t SettlementContract::effective_window() const {
    // The proof variant has no dispute edge; distribution opens immediately.
    return params_.variant == Variant::proof ? 0 : params_.dispute_window_s;
}

void SettlementContract::require_owner(Address sender) const {
    if (sender != owner_) throw Revert{"NotOwner"};
}

bool SettlementContract::verify(const Circuit* circuit, const SatisfiedInstance& proof,
                                std::span<const Fe> expected) const {
    if (!circuit) return false;
    try {
        return verify_instance(*circuit, proof, expected);
    } catch (const Error&) {
        return false; // shape mismatch counts as an invalid proof on-chain
    }
}

TxReceipt SettlementContract::run(Address sender, const std::string& function, std::uint64_t gas,
                                  const std::function<void()>& body) {
    State snapshot = st_;
    TxReceipt receipt = ledger_.execute(sender, function, gas, body);
    if (!receipt.success)
        st_ = std::move(snapshot);
    else
        st_.last_activity = ledger_.now();
    return receipt;
}

TxReceipt SettlementContract::submit_commit(Address sender, const Fe& c, const SatisfiedInstance* proof) {
    std::uint64_t gas =
        params_.variant == Variant::proof ? ledger_.config().gas.commit_cp : ledger_.config().gas.commit_cc;
    return run(sender, "commit", gas, [&] { commit_impl(sender, c, proof); });
}

void SettlementContract::commit_impl(Address sender, const Fe& c, const SatisfiedInstance* proof) {
    require_owner(sender);
    if (st_.tau != Status::committed) throw Revert{"WrongState"};
    if (params_.variant == Variant::proof) {
        // Transition proof C^{r-1} -> C^r; the circuit's public round input is
        // the column count of the earlier commitment, r-1.
        if (!proof) throw Revert{"InvalidProof"};
        TransitionPublics expected{fe(st_.r - 1), st_.commitments[st_.r - 1], c, params_.h_agg};
        if (!verify(verifiers_.transition, *proof, expected.to_vector())) throw Revert{"InvalidProof"};
    }
    st_.commitments.push_back(c);
    st_.r += 1;
    ledger_.emit_event("committed", {{"round", std::to_string(st_.r - 1)}, {"commitment", c.to_decimal()}});
}

TxReceipt SettlementContract::submit_finalize(Address sender) {
    return run(sender, "finalize", ledger_.config().gas.finalize, [&] { finalize_impl(sender); });
}

void SettlementContract::finalize_impl(Address sender) {
    require_owner(sender);
    if (st_.tau != Status::committed && st_.tau != Status::challenged) throw Revert{"WrongState"};
    st_.tau = Status::reward_init;
    st_.t_unlock = ledger_.now() + effective_window();
    ledger_.emit_event("finalized", {{"t_unlock", std::to_string(st_.t_unlock)}});
}

TxReceipt SettlementContract::submit_challenge(Address sender, std::uint64_t r_prime, const SatisfiedInstance& proof,
                                               Wei bond) {
    std::uint64_t gas = st_.challenge_attempts == 0 ? ledger_.config().gas.challenge_first
                                                    : ledger_.config().gas.challenge_repeat;
    st_.challenge_attempts += 1; // repeat pricing counts reverted attempts too
    std::uint64_t attempts = st_.challenge_attempts;
    TxReceipt r = run(sender, "challenge", gas, [&] { challenge_impl(sender, r_prime, proof, bond); });
    st_.challenge_attempts = attempts; // survives the rollback in run()
    return r;
}

void SettlementContract::challenge_impl(Address sender, std::uint64_t r_prime, const SatisfiedInstance& proof,
                                        Wei bond) {
    if (params_.variant != Variant::challenge) throw Revert{"WrongVariant"};
    if (st_.tau != Status::committed && st_.tau != Status::reward_init && st_.tau != Status::challenged)
        throw Revert{"WrongState"};
    if (r_prime <= st_.r_last) throw Revert{"StaleRound"}; // rounds below r_last are stale
    if (bond < required_bond()) throw Revert{"InsufficientBond"};
    if (r_prime < 2 || r_prime - 2 >= st_.commitments.size()) throw Revert{"InvalidProof"};
    // Opens C^{r'-2}; that commitment covers r'-2 columns.
    ChallengePublics expected{fe(r_prime - 2), st_.commitments[r_prime - 2], params_.h_agg};
    if (!verify(verifiers_.challenge, proof, expected.to_vector())) throw Revert{"InvalidProof"};

    ledger_.transfer(sender, self_, bond);
    st_.bonds[sender] += bond;
    st_.last_challenger = sender;
    st_.r_last = r_prime;
    st_.tau = Status::challenged;
    st_.t_unlock = ledger_.now() + effective_window();
    ledger_.emit_event("challenged", {{"r_prime", std::to_string(r_prime)}, {"challenger", ledger_.label(sender)}});
}

TxReceipt SettlementContract::submit_counter(Address sender, std::uint64_t r_prime, const SatisfiedInstance& proof) {
    return run(sender, "counter", ledger_.config().gas.counter, [&] { counter_impl(sender, r_prime, proof); });
}

void SettlementContract::counter_impl(Address sender, std::uint64_t r_prime, const SatisfiedInstance& proof) {
    (void)sender; // counter is public; only the proof matters
    if (params_.variant != Variant::challenge) throw Revert{"WrongVariant"};
    if (st_.tau != Status::challenged) throw Revert{"WrongState"};
    if (r_prime < 3) throw Revert{"RoundTooEarly"};
    if (r_prime - 1 >= st_.commitments.size()) throw Revert{"InvalidProof"};
    // Transition C^{r'-2} -> C^{r'-1}; circuit round input is r'-2.
    TransitionPublics expected{fe(r_prime - 2), st_.commitments[r_prime - 2], st_.commitments[r_prime - 1],
                               params_.h_agg};
    if (!verify(verifiers_.transition, proof, expected.to_vector())) throw Revert{"InvalidProof"};

    // Forfeit the standing challenger's bond to the owner.
    if (st_.last_challenger) {
        auto it = st_.bonds.find(st_.last_challenger);
        if (it != st_.bonds.end() && it->second > 0) {
            ledger_.transfer(self_, owner_, it->second);
            it->second = 0;
        }
    }
    st_.tau = Status::reward_init;
    st_.t_unlock = ledger_.now() + effective_window();
    ledger_.emit_event("countered", {{"r_prime", std::to_string(r_prime)}});
}

TxReceipt SettlementContract::submit_distribute(Address sender, std::span<const Fe> participants,
                                                std::span<const Fe> amounts, const SatisfiedInstance& proof) {
    return run(sender, "distribute", ledger_.config().gas.distribute_per_batch,
               [&] { distribute_impl(sender, participants, amounts, proof); });
}

void SettlementContract::distribute_impl(Address sender, std::span<const Fe> participants,
                                         std::span<const Fe> amounts, const SatisfiedInstance& proof) {
    (void)sender; // distribution is public
    if (st_.tau != Status::reward_init && st_.tau != Status::challenged && st_.tau != Status::distributing)
        throw Revert{"WrongState"};
    if (ledger_.now() < st_.t_unlock) throw Revert{"WindowNotElapsed"};
    if (!verifiers_.distribution) throw Revert{"InvalidProof"};

    const CircuitParams& cp = verifiers_.distribution->params();
    if (cp.batch_size > ledger_.config().max_batch_size) throw Revert{"DeployLimit"};
    if (participants.size() != cp.batch_size || amounts.size() != cp.batch_size) throw Revert{"InvalidProof"};
    if (proof.public_inputs.size() != 4 + 2 * cp.batch_size) throw Revert{"InvalidProof"};

    std::uint64_t batch = 0;
    try {
        batch = proof.public_inputs[1].as_u64();
    } catch (const Error&) {
        throw Revert{"InvalidProof"};
    }
    if (batch >= st_.paid_batches.size()) throw Revert{"InvalidProof"};
    if (st_.paid_batches[batch]) throw Revert{"DoubleBatch"};

    // The final commitment C^{r-1} covers r-1 columns; that count is the
    // circuit's public round input.
    DistributionPublics expected;
    expected.round = fe(st_.r - 1);
    expected.batch = fe(batch);
    expected.c = st_.commitments[st_.r - 1];
    expected.h_agg = params_.h_agg;
    expected.rewards.assign(amounts.begin(), amounts.end());
    expected.participants.assign(participants.begin(), participants.end());
    if (!verify(verifiers_.distribution, proof, expected.to_vector())) throw Revert{"InvalidProof"};

    for (size_t i = 0; i < cp.batch_size; ++i) {
        if (participants[i].is_zero()) continue; // padding slot
        Address to = 0;
        Wei amount = 0;
        try {
            to = participants[i].as_u64();
            amount = amounts[i].as_u64();
        } catch (const Error&) {
            throw Revert{"InvalidProof"};
        }
        ledger_.transfer(self_, to, amount);
    }

    st_.paid_batches[batch] = true;
    if (params_.mode == Mode::multi_shot) {
        st_.xi += cp.batch_size;
        st_.tau = st_.xi >= params_.participant_count ? Status::distributed : Status::distributing;
    } else {
        st_.xi = params_.participant_count;
        st_.tau = Status::distributed;
    }
    ledger_.emit_event("distributed", {{"batch", std::to_string(batch)}, {"status", status_name(st_.tau)}});
    if (st_.tau == Status::distributed) refund_bonds();
}

void SettlementContract::refund_bonds() {
    for (auto& [challenger, amount] : st_.bonds) {
        if (amount > 0) {
            ledger_.transfer(self_, challenger, amount);
            amount = 0;
        }
    }
}

TxReceipt SettlementContract::submit_force_finalize(Address sender) {
    return run(sender, "force_finalize", ledger_.config().gas.finalize, [&] { force_finalize_impl(sender); });
}

void SettlementContract::force_finalize_impl(Address sender) {
    (void)sender; // public by design: the escape hatch for a vanished owner
    if (!params_.force_finalize_enabled) throw Revert{"UnknownFunction"};
    if (st_.tau != Status::committed && st_.tau != Status::challenged) throw Revert{"WrongState"};
    if (ledger_.now() < st_.last_activity + params_.force_finalize_timeout_s) throw Revert{"TimeoutNotElapsed"};
    st_.tau = Status::reward_init;
    st_.t_unlock = ledger_.now() + effective_window();
    ledger_.emit_event("finalized", {{"t_unlock", std::to_string(st_.t_unlock)}, {"forced", "1"}});
}

CreateResult create_contract(Ledger& ledger, Address owner, const ContractParams& params, const Verifiers& verifiers) {
    CreateResult result;
    auto contract = std::make_unique<SettlementContract>(ledger, owner, params, verifiers);
    result.receipt = ledger.execute(owner, "create", ledger.config().gas.create, [&] {
        if (params.stake == 0) throw Revert{"ZeroStake"};
        ledger.transfer(owner, contract->address(), params.stake);
        ledger.emit_event("created", {{"variant", variant_name(params.variant)},
                                      {"mode", mode_name(params.mode)},
                                      {"stake", wei_to_string(params.stake)},
                                      {"rho_ref", params.rho_ref.to_decimal()}});
    });
    if (result.receipt.success) result.contract = std::move(contract);
    return result;
}

} // namespace settle
