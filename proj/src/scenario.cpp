#include "settle/scenario.hpp"

#include <algorithm>

#include "settle/errors.hpp"
#include "settle/rng.hpp"

namespace settle {

const char* agg_behavior_name(AggBehavior b) {
    switch (b) {
        case AggBehavior::honest: return "honest";
        case AggBehavior::commitment_reversal: return "commitment-reversal";
        case AggBehavior::refusal_to_commit: return "refusal-to-commit";
        case AggBehavior::reward_withholding: return "reward-withholding";
    }
    return "?";
}

const char* part_behavior_name(PartBehavior b) {
    switch (b) {
        case PartBehavior::honest: return "honest";
        case PartBehavior::stale_challenger: return "stale-challenger";
        case PartBehavior::malicious_challenger: return "malicious-challenger";
        case PartBehavior::passive: return "passive";
    }
    return "?";
}

AggBehavior agg_behavior_from_name(std::string_view name) {
    for (AggBehavior b : {AggBehavior::honest, AggBehavior::commitment_reversal, AggBehavior::refusal_to_commit,
                          AggBehavior::reward_withholding})
        if (name == agg_behavior_name(b)) return b;
    fail(Errc::unknown_behavior, "unknown aggregator behavior: " + std::string(name));
}

PartBehavior part_behavior_from_name(std::string_view name) {
    for (PartBehavior b : {PartBehavior::honest, PartBehavior::stale_challenger, PartBehavior::malicious_challenger,
                           PartBehavior::passive})
        if (name == part_behavior_name(b)) return b;
    fail(Errc::unknown_behavior, "unknown participant behavior: " + std::string(name));
}

void validate(const ScenarioConfig& c) {
    if (c.participants == 0 || c.rounds == 0) fail(Errc::config_invalid, "need at least one participant and one round");
    if (c.circuit.max_participants < c.participants)
        fail(Errc::config_invalid, "circuit max_participants below effective participants");
    if (c.circuit.max_rounds < c.rounds) fail(Errc::config_invalid, "circuit max_rounds below effective rounds");
    if (c.circuit.batch_size == 0) fail(Errc::config_invalid, "batch size must be positive");
    if (c.mode == Mode::one_shot && c.circuit.batch_size < c.circuit.max_participants)
        fail(Errc::config_invalid, "one-shot mode needs batch_size = max_participants");
    if (c.reward_budget_per_round < c.participants)
        fail(Errc::config_invalid, "per-round budget below one token per participant");
    for (const auto& [idx, b] : c.participant_behaviors)
        if (idx >= c.participants) fail(Errc::config_invalid, "behavior override for unknown participant");
    bool misbehaving = c.aggregator != AggBehavior::honest;
    if (misbehaving && (c.activation_round == 0 || c.activation_round > c.rounds) &&
        c.aggregator != AggBehavior::reward_withholding)
        fail(Errc::config_invalid, "misbehaving aggregator needs an activation round within the run");
    if (c.aggregator == AggBehavior::commitment_reversal && c.variant == Variant::proof)
        fail(Errc::config_invalid, "commitment reversal cannot pass per-round validity proofs");
    if (c.aggregator == AggBehavior::commitment_reversal && c.activation_round < 2)
        fail(Errc::config_invalid, "reversal needs an earlier committed round to rewrite");
    bool challenger_play = c.third_party_challenger;
    for (const auto& [idx, b] : c.participant_behaviors)
        if (b == PartBehavior::stale_challenger || b == PartBehavior::malicious_challenger) challenger_play = true;
    if (challenger_play && c.variant != Variant::challenge)
        fail(Errc::config_invalid, "challenges only exist in the challenge variant");
    if (challenger_play && c.rounds < 2)
        fail(Errc::config_invalid, "a stale challenge needs at least two committed rounds");
}

std::vector<std::vector<std::uint64_t>> generate_rewards(std::uint64_t seed, size_t participants, size_t rounds,
                                                         std::uint64_t budget) {
    std::uint64_t cap = budget / participants; // keeps every column sum within budget
    Rng rng(Rng::mix(0x7265776172647321ULL, seed));
    std::vector<std::vector<std::uint64_t>> out(rounds, std::vector<std::uint64_t>(participants));
    for (auto& round : out)
        for (auto& cell : round) cell = cap <= 1 ? 1 : rng.range(1, cap);
    return out;
}

namespace {

struct SyncRecord {
    std::uint64_t round = 0;
    CommitmentRecord record; // the broadcast (honest) record
    RewardMatrix matrix;     // full-matrix sync snapshot
};

struct Participant {
    size_t index = 0;
    Address account = 0;
    PartBehavior behavior = PartBehavior::honest;
    bool exited = false;
    std::uint64_t exit_round = 0;
};

class Engine {
public:
    explicit Engine(const ScenarioConfig& config)
        : cfg_(config), sponge_(config.circuit.hash), ledger_(make_ledger_config(config)) {}

    ScenarioReport run();

private:
    static LedgerConfig make_ledger_config(const ScenarioConfig& c) {
        LedgerConfig lc = c.ledger;
        return lc;
    }

    void setup();
    void training_loop();
    bool commit_one_round(std::uint64_t k);
    void sync_and_check(std::uint64_t k, const CommitmentRecord& broadcast, const Fe& onchain);
    void resolution_phase();
    void finalize_and_wait();
    bool distribute_all(Address sender);
    void run_stale_challenge_play();
    void run_reversal_dispute();
    ScenarioReport finish();

    SatisfiedInstance transition_proof(std::uint64_t covered_after, const RewardMatrix& v2);
    SatisfiedInstance challenge_proof(const SyncRecord& opened);
    SatisfiedInstance distribution_proof(std::uint64_t batch);

    void expect(const std::string& what, bool held) { expectations_.push_back({what, held}); }
    void note(const std::string& text) { notes_.push_back(text); }

    const ScenarioConfig& cfg_;
    Sponge sponge_;
    Ledger ledger_;

    std::optional<Circuit> transition_circuit_, challenge_circuit_, distribution_circuit_;
    std::unique_ptr<SettlementContract> contract_;

    KeyPair key_;
    Fe rho_;
    ParticipantRoster roster_;
    Address aggregator_ = 0, third_party_ = 0;
    std::vector<Participant> participants_;
    std::map<Address, Wei> start_balances_;

    std::vector<std::vector<std::uint64_t>> rewards_;
    Wei stake_ = 0;
    RewardMatrix v_; // aggregator's cumulative matrix (honest content)
    RewardMatrix fraud_matrix_;
    bool fraud_committed_ = false;

    std::vector<SyncRecord> archive_; // shared off-chain sync history
    std::vector<RejectionEntry> rejections_;
    std::vector<Expectation> expectations_;
    std::vector<std::string> notes_;
    std::vector<std::string> envelopes_;
    std::vector<CommitmentRecord> broadcasts_;
    std::map<Address, Wei> payouts_;

    bool disqualified_ = false;
    bool aborted_training_ = false;
    std::int64_t waited_seconds_ = 0;
    size_t proofs_generated_ = 0;
};

void Engine::setup() {
    rewards_ = generate_rewards(cfg_.seed, cfg_.participants, cfg_.rounds, cfg_.reward_budget_per_round);
    Wei total = 0;
    for (const auto& round : rewards_)
        for (std::uint64_t cell : round) total += cell;
    stake_ = cfg_.stake_override ? cfg_.stake_override : total;

    const Wei one_eth = (Wei)1'000'000'000ULL * 1'000'000'000ULL;
    aggregator_ = ledger_.create_account("aggregator", stake_ + one_eth);
    for (size_t i = 0; i < cfg_.participants; ++i) {
        Participant p;
        p.index = i;
        p.account = ledger_.create_account("participant" + std::to_string(i), one_eth);
        auto it = cfg_.participant_behaviors.find(i);
        if (it != cfg_.participant_behaviors.end()) p.behavior = it->second;
        participants_.push_back(p);
    }
    third_party_ = ledger_.create_account("third-party", one_eth);
    start_balances_[aggregator_] = ledger_.balance(aggregator_);
    for (const Participant& p : participants_) start_balances_[p.account] = ledger_.balance(p.account);
    start_balances_[third_party_] = ledger_.balance(third_party_);

    key_ = keygen(sponge_, cfg_.seed);
    Rng rho_rng(Rng::mix(0x73616c74u, cfg_.seed));
    rho_ = Fe::random(rho_rng);

    roster_.effective = cfg_.participants;
    roster_.addresses.assign(cfg_.circuit.max_participants, Fe());
    for (size_t i = 0; i < cfg_.participants; ++i) roster_.addresses[i] = fe(participants_[i].account);

    v_ = RewardMatrix::zero(cfg_.circuit.max_participants, cfg_.circuit.max_rounds);
    v_.effective_participants = cfg_.participants;

    // Circuits for this deployment.
    bool need_transition = cfg_.variant == Variant::proof || cfg_.variant == Variant::challenge;
    if (need_transition) transition_circuit_ = Circuit::build(CircuitKind::transition, cfg_.circuit, sponge_);
    if (cfg_.variant == Variant::challenge)
        challenge_circuit_ = Circuit::build(CircuitKind::challenge, cfg_.circuit, sponge_);
    distribution_circuit_ = Circuit::build(CircuitKind::distribution, cfg_.circuit, sponge_);

    ContractParams params;
    params.h_agg = pk_digest(sponge_, key_.pk);
    params.rho_ref = sponge_.hash2(rho_, Fe());
    params.genesis_commitment =
        commitment_of(sponge_, RewardMatrix::zero(cfg_.circuit.max_participants, cfg_.circuit.max_rounds), roster_, rho_);
    params.participant_count = cfg_.participants;
    params.variant = cfg_.variant;
    params.mode = cfg_.mode;
    params.dispute_window_s = cfg_.dispute_window_s;
    params.stake = stake_;
    params.challenge_bond = cfg_.bond_override;
    params.force_finalize_enabled = cfg_.force_finalize_enabled;
    params.force_finalize_timeout_s = cfg_.force_finalize_timeout_s;

    Verifiers verifiers;
    verifiers.transition = transition_circuit_ ? &*transition_circuit_ : nullptr;
    verifiers.challenge = challenge_circuit_ ? &*challenge_circuit_ : nullptr;
    verifiers.distribution = &*distribution_circuit_;

    CreateResult created = create_contract(ledger_, aggregator_, params, verifiers);
    if (!created.contract) fail(Errc::config_invalid, "create reverted: " + created.receipt.revert_reason);
    contract_ = std::move(created.contract);
}

SatisfiedInstance Engine::transition_proof(std::uint64_t covered_after, const RewardMatrix& v2) {
    TransitionInputs in;
    in.round = covered_after - 1; // proves C_{k-1} -> C_k
    in.v2 = v2.values;
    in.p2 = roster_.addresses;
    in.p1_count = roster_.effective;
    in.rho = rho_;
    in.key = key_;
    ++proofs_generated_;
    return prove_transition(*transition_circuit_, sponge_, in);
}

SatisfiedInstance Engine::challenge_proof(const SyncRecord& opened) {
    ChallengeInputs in;
    in.round = opened.round; // the opened commitment covers `round` columns
    in.v = opened.matrix.values;
    in.p = roster_.addresses;
    in.rho = rho_;
    in.pk = key_.pk;
    in.sig = opened.record.sig;
    ++proofs_generated_;
    return prove_challenge(*challenge_circuit_, sponge_, in);
}

SatisfiedInstance Engine::distribution_proof(std::uint64_t batch) {
    // Any holder of the final sync snapshot can build this.
    const SyncRecord& last = archive_.back();
    DistributionInputs in;
    in.round = last.round;
    in.batch = batch;
    in.v = last.matrix.values;
    in.p = roster_.addresses;
    in.rho = rho_;
    in.pk = key_.pk;
    in.sig = last.record.sig;
    ++proofs_generated_;
    return prove_distribution(*distribution_circuit_, sponge_, in);
}

bool Engine::commit_one_round(std::uint64_t k) {
    // Round k rewards land in column k-1; the commitment covers k columns.
    for (size_t i = 0; i < cfg_.participants; ++i) v_.values[i][k - 1] = fe(rewards_[k - 1][i]);
    v_.effective_rounds = k;

    CommitmentRecord honest = commit_round(sponge_, v_, roster_, rho_, key_, k);
    broadcasts_.push_back(honest);

    Fe onchain_c = honest.c;
    bool reversal_now = cfg_.aggregator == AggBehavior::commitment_reversal && k == cfg_.activation_round;
    if (reversal_now) {
        // Publish a fraudulent commitment that rewrites history: the victim's
        // round-1 reward is erased, which breaks slice consistency with the
        // already-committed prefix.
        fraud_matrix_ = v_;
        fraud_matrix_.values[0][0] = Fe();
        onchain_c = commitment_of(sponge_, fraud_matrix_, roster_, rho_);
        fraud_committed_ = true;
    }

    TxReceipt receipt;
    if (cfg_.variant == Variant::proof) {
        SatisfiedInstance proof = transition_proof(k, v_);
        envelopes_.push_back(instance_to_text(proof));
        receipt = contract_->submit_commit(aggregator_, onchain_c, &proof);
    } else {
        receipt = contract_->submit_commit(aggregator_, onchain_c, nullptr);
    }
    if (!receipt.success) {
        note("commit for round " + std::to_string(k) + " reverted: " + receipt.revert_reason);
        return false;
    }

    sync_and_check(k, honest, onchain_c);
    return true;
}

void Engine::sync_and_check(std::uint64_t k, const CommitmentRecord& broadcast, const Fe& onchain) {
    archive_.push_back(SyncRecord{k, broadcast, v_});
    for (Participant& p : participants_) {
        if (p.exited || p.behavior == PartBehavior::passive) continue;
        LocalView view;
        view.v = archive_.back().matrix;
        view.roster = roster_;
        view.rho = rho_;
        view.pk = key_.pk;
        view.own_index = p.index;
        view.expected_reward = fe(rewards_[k - 1][p.index]);
        CheckOutcome out = participant_check(sponge_, onchain, broadcast, view);
        if (!out.accepted) {
            rejections_.push_back({p.index, k, out.reason});
            p.exited = true;
            p.exit_round = k;
            aborted_training_ = true;
        }
    }
}

void Engine::training_loop() {
    for (std::uint64_t k = 1; k <= cfg_.rounds; ++k) {
        if (cfg_.aggregator == AggBehavior::refusal_to_commit && k >= cfg_.activation_round) {
            // The commitment never appears; everyone still watching exits.
            for (Participant& p : participants_) {
                if (!p.exited && p.behavior != PartBehavior::passive) {
                    p.exited = true;
                    p.exit_round = k;
                }
            }
            aborted_training_ = true;
            note("no commitment for round " + std::to_string(k) + "; participants exited");
            return;
        }
        if (!commit_one_round(k)) return;
        if (aborted_training_) return; // first detected misbehavior ends the run
    }
}

void Engine::finalize_and_wait() {
    contract_->submit_finalize(aggregator_);
    std::int64_t wait = contract_->unlock_time() - ledger_.now();
    if (wait > 0) {
        ledger_.advance_time(wait);
        waited_seconds_ += wait;
    }
}

bool Engine::distribute_all(Address sender) {
    size_t groups = (cfg_.circuit.max_participants + cfg_.circuit.batch_size - 1) / cfg_.circuit.batch_size;
    for (std::uint64_t b = 0; b < groups; ++b) {
        SatisfiedInstance proof = distribution_proof(b);
        envelopes_.push_back(instance_to_text(proof));
        auto publics = DistributionPublics::from_span(proof.public_inputs, cfg_.circuit.batch_size);
        TxReceipt receipt = contract_->submit_distribute(sender, publics.participants, publics.rewards, proof);
        if (!receipt.success) {
            note("distribute batch " + std::to_string(b) + " reverted: " + receipt.revert_reason);
            return false;
        }
        for (size_t i = 0; i < cfg_.circuit.batch_size; ++i)
            if (!publics.participants[i].is_zero()) payouts_[publics.participants[i].as_u64()] += publics.rewards[i].as_u64();
        if (contract_->status() == Status::distributed) break;
    }
    return contract_->status() == Status::distributed;
}

void Engine::run_stale_challenge_play() {
    // A disruptive challenger replays the opening of an old commitment. The
    // first attempt is accepted (its round is above the watermark), repeats
    // are rejected as stale, and a counter-proof resolves the dispute and
    // claims the bond.
    Address challenger = third_party_;
    if (!cfg_.third_party_challenger) {
        for (Participant& p : participants_)
            if (p.behavior == PartBehavior::stale_challenger || p.behavior == PartBehavior::malicious_challenger)
                challenger = p.account;
    }
    const std::uint64_t r_prime = 3; // opens C^1
    if (archive_.size() < 2) {
        note("not enough committed rounds for a stale challenge");
        return;
    }
    SatisfiedInstance proof = challenge_proof(archive_[0]);
    envelopes_.push_back(instance_to_text(proof));
    Wei bond = contract_->required_bond();
    Wei agg_before = ledger_.balance(aggregator_);

    TxReceipt first = contract_->submit_challenge(challenger, r_prime, proof, bond);
    expect("stale challenge: first attempt accepted", first.success && contract_->status() == Status::challenged);

    TxReceipt second = contract_->submit_challenge(challenger, r_prime, proof, bond);
    TxReceipt third = contract_->submit_challenge(challenger, r_prime, proof, bond);
    expect("stale challenge: repeats revert StaleRound",
           !second.success && second.revert_reason == "StaleRound" && !third.success);

    SatisfiedInstance counter = transition_proof(r_prime - 1, archive_[1].matrix);
    envelopes_.push_back(instance_to_text(counter));
    TxReceipt countered = contract_->submit_counter(aggregator_, r_prime, counter);
    expect("stale challenge: counter restores RewardInit",
           countered.success && contract_->status() == Status::reward_init);
    Wei agg_after = ledger_.balance(aggregator_);
    Wei fee = ledger_.config().charge_fees ? (Wei)countered.gas_used * ledger_.config().gas_price_wei : 0;
    expect("stale challenge: bond transferred to the aggregator", agg_after + fee == agg_before + bond);

    std::int64_t wait = contract_->unlock_time() - ledger_.now();
    if (wait > 0) {
        ledger_.advance_time(wait);
        waited_seconds_ += wait;
    }
}

void Engine::run_reversal_dispute() {
    // The victim saw the on-chain value differ from the broadcast; it opens
    // the last commitment it can reproduce, C^{k-1}, i.e. r' = k+1.
    const std::uint64_t k = cfg_.activation_round;
    size_t challenger_idx = rejections_.empty() ? 0 : rejections_.front().participant;
    Address challenger = participants_[challenger_idx].account;

    SatisfiedInstance proof = challenge_proof(archive_[k - 2]);
    envelopes_.push_back(instance_to_text(proof));
    TxReceipt challenged = contract_->submit_challenge(challenger, k + 1, proof, contract_->required_bond());
    expect("reversal: challenge accepted", challenged.success && contract_->status() == Status::challenged);

    // The aggregator tries to answer with a transition onto its fraudulent
    // commitment. The fraud rewrote an earlier column, so the derived slice
    // no longer matches the stored C^{k-1} and the proof cannot check out.
    bool counter_possible = true;
    TxReceipt countered;
    try {
        SatisfiedInstance counter = prove_transition(
            *transition_circuit_, sponge_,
            TransitionInputs{k - 1, fraud_matrix_.values, roster_.addresses, roster_.effective, rho_, key_});
        countered = contract_->submit_counter(aggregator_, k + 1, counter);
        counter_possible = countered.success;
    } catch (const Error& e) {
        counter_possible = false;
        note(std::string("counter witness generation failed: ") + e.what());
    }
    if (!counter_possible && countered.function == "counter")
        note("counter transaction reverted: " + countered.revert_reason);
    expect("reversal: no valid counter exists", !counter_possible);
    expect("reversal: state remains Challenged", contract_->status() == Status::challenged);

    disqualified_ = true;
    note("aggregator disqualified; slash " + econ::rat_to_string(cfg_.game.agg_slash) +
         " recorded for challenger participant" + std::to_string(challenger_idx));

    std::int64_t wait = contract_->unlock_time() - ledger_.now();
    if (wait > 0) {
        ledger_.advance_time(wait);
        waited_seconds_ += wait;
    }
    // Distribution against the latest (fraudulent) commitment would need its
    // preimage, which honest parties do not hold; funds stay escrowed.
    note("distribution unavailable: latest commitment is the fraudulent one");
}

void Engine::resolution_phase() {
    bool has_challenger_play = false;
    for (const Participant& p : participants_)
        if (p.behavior == PartBehavior::stale_challenger || p.behavior == PartBehavior::malicious_challenger)
            has_challenger_play = true;
    if (cfg_.third_party_challenger) has_challenger_play = true;

    switch (cfg_.aggregator) {
        case AggBehavior::honest: {
            finalize_and_wait();
            if (has_challenger_play) run_stale_challenge_play();
            distribute_all(aggregator_);
            break;
        }
        case AggBehavior::reward_withholding: {
            finalize_and_wait();
            // The owner never distributes; after the window any user may.
            Address sender = participants_.empty() ? third_party_ : participants_[0].account;
            bool done = distribute_all(sender);
            expect("withholding: a non-owner distribute succeeds", done);
            break;
        }
        case AggBehavior::refusal_to_commit: {
            if (cfg_.force_finalize_enabled) {
                ledger_.advance_time(cfg_.force_finalize_timeout_s);
                waited_seconds_ += cfg_.force_finalize_timeout_s;
                Address sender = participants_.empty() ? third_party_ : participants_[0].account;
                TxReceipt forced = contract_->submit_force_finalize(sender);
                if (forced.success) {
                    std::int64_t wait = contract_->unlock_time() - ledger_.now();
                    if (wait > 0) {
                        ledger_.advance_time(wait);
                        waited_seconds_ += wait;
                    }
                    distribute_all(sender);
                }
            }
            break;
        }
        case AggBehavior::commitment_reversal: {
            run_reversal_dispute();
            break;
        }
    }
}

ScenarioReport Engine::finish() {
    ScenarioReport rep;
    rep.name = cfg_.name;
    rep.seed = cfg_.seed;
    rep.variant = variant_name(cfg_.variant);
    rep.terminal_status = status_name(contract_->status());
    rep.aggregator_disqualified = disqualified_;
    rep.tx_log = ledger_.tx_log();
    rep.events = ledger_.events();
    rep.rejections = rejections_;
    rep.notes = notes_;
    rep.broadcast_records = broadcasts_;
    rep.instance_envelopes = envelopes_;

    for (const TxReceipt& r : rep.tx_log) {
        rep.gas_by_function[r.function] += r.gas_used;
        rep.total_gas += r.gas_used;
    }

    auto actor = [&](Address a) {
        ActorReport ar;
        ar.label = ledger_.label(a);
        ar.start_balance = start_balances_.count(a) ? start_balances_[a] : 0;
        ar.end_balance = ledger_.balance(a);
        ar.payout_received = payouts_.count(a) ? payouts_[a] : 0;
        for (const TxReceipt& r : rep.tx_log)
            if (r.sender == a) ++ar.tx_sent;
        return ar;
    };
    rep.actors.push_back(actor(aggregator_));
    for (const Participant& p : participants_) rep.actors.push_back(actor(p.account));
    rep.actors.push_back(actor(third_party_));

    rep.initial_stake = stake_;
    for (const auto& [addr, amount] : payouts_) rep.total_paid += amount;
    rep.residual_escrow = contract_->escrow();

    // Exact friction: gas cost in milli-ETH, waiting in seconds, proving
    // latency from the configured per-proof constant.
    econ::FrictionInputs fi;
    fi.gas_cost = econ::Rat(econ::BigInt(std::to_string((unsigned long long)rep.total_gas)) *
                                econ::BigInt(std::to_string((unsigned long long)cfg_.ledger.gas_price_wei)),
                            econ::BigInt("1000000000000000"));
    fi.protocol_delay = econ::Rat(waited_seconds_);
    fi.proving_latency = cfg_.proving_time_s * econ::Rat((long)proofs_generated_);
    rep.friction = econ::rat_to_string(econ::friction(fi, cfg_.weights));

    econ::NashReport nash = econ::check_nash(cfg_.game, 1);
    rep.nash_equilibrium = nash.equilibrium;
    rep.slash_exceeds_gas = nash.slash_exceeds_gas;

    // Scenario-wide expectations.
    if (cfg_.aggregator == AggBehavior::honest && !aborted_training_) {
        bool honest_run = true;
        for (const Participant& p : participants_)
            honest_run = honest_run && p.behavior != PartBehavior::stale_challenger &&
                         p.behavior != PartBehavior::malicious_challenger;
        honest_run = honest_run && !cfg_.third_party_challenger;

        expect("honest: terminal state is Distributed", contract_->status() == Status::distributed);
        bool payouts_exact = true;
        for (const Participant& p : participants_) {
            Wei expected = 0;
            for (std::uint64_t t = 0; t < cfg_.rounds; ++t) expected += rewards_[t][p.index];
            payouts_exact = payouts_exact && payouts_[p.account] == expected;
        }
        expect("honest: every payout equals the committed row sum", payouts_exact);
        expect("honest: payouts plus residual escrow equal the stake",
               rep.total_paid + rep.residual_escrow == rep.initial_stake);
        if (honest_run) {
            bool passive = true;
            for (const TxReceipt& r : rep.tx_log)
                for (const Participant& p : participants_)
                    if (r.sender == p.account) passive = false;
            expect("honest: participants never transact", passive);
        }
    }
    if (cfg_.aggregator == AggBehavior::commitment_reversal) {
        bool saw_mismatch = false;
        for (const RejectionEntry& r : rejections_)
            saw_mismatch = saw_mismatch || (r.reason == RejectReason::hash_mismatch && r.round == cfg_.activation_round);
        expect("reversal: a participant rejected with hash-mismatch", saw_mismatch);
        expect("reversal: aggregator disqualified with slash recorded", disqualified_);
        // Everything before the deviation stays verifiable: earlier broadcast
        // records hash to the stored on-chain history.
        bool prefix_ok = true;
        for (std::uint64_t r = 1; r < cfg_.activation_round; ++r)
            prefix_ok = prefix_ok && contract_->commitment(r) == archive_[r - 1].record.c;
        expect("reversal: rounds before the deviation remain verifiable", prefix_ok);
    }
    if (cfg_.aggregator == AggBehavior::refusal_to_commit) {
        expect("refusal: history stops at the last honest round",
               contract_->commit_count() == cfg_.activation_round - 1);
        bool exited = true;
        for (const Participant& p : participants_)
            if (p.behavior != PartBehavior::passive) exited = exited && p.exited && p.exit_round == cfg_.activation_round;
        expect("refusal: watching participants exited at the missing round", exited);
        bool prefix_ok = true;
        for (std::uint64_t r = 1; r < cfg_.activation_round; ++r)
            prefix_ok = prefix_ok && contract_->commitment(r) == archive_[r - 1].record.c;
        expect("refusal: committed rounds remain verifiable on-chain", prefix_ok);
    }
    if (cfg_.aggregator == AggBehavior::reward_withholding) {
        expect("withholding: terminal state is Distributed", contract_->status() == Status::distributed);
        bool payouts_exact = true;
        for (const Participant& p : participants_) {
            Wei expected = 0;
            for (std::uint64_t t = 0; t < cfg_.rounds; ++t) expected += rewards_[t][p.index];
            payouts_exact = payouts_exact && payouts_[p.account] == expected;
        }
        expect("withholding: payouts still exact", payouts_exact);
    }

    rep.expectations = expectations_;
    return rep;
}

ScenarioReport Engine::run() {
    setup();
    training_loop();
    resolution_phase();
    return finish();
}

} // namespace

std::vector<std::string> ScenarioReport::violated_expectations() const {
    std::vector<std::string> out;
    for (const Expectation& e : expectations)
        if (!e.held) out.push_back(e.description);
    return out;
}

ScenarioReport run_scenario(const ScenarioConfig& config) {
    validate(config);
    Engine engine(config);
    return engine.run();
}

} // namespace settle
