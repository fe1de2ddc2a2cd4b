#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "settle/commitment.hpp"
#include "settle/contract.hpp"
#include "settle/economics.hpp"
#include "settle/ledger.hpp"

namespace settle {

enum class AggBehavior { honest, commitment_reversal, refusal_to_commit, reward_withholding };
enum class PartBehavior { honest, stale_challenger, malicious_challenger, passive };

const char* agg_behavior_name(AggBehavior b);
const char* part_behavior_name(PartBehavior b);
AggBehavior agg_behavior_from_name(std::string_view name);   // throws unknown_behavior
PartBehavior part_behavior_from_name(std::string_view name); // throws unknown_behavior

struct ScenarioConfig {
    std::string name = "scenario";
    std::uint64_t seed = 1;

    size_t participants = 8; // effective roster size
    size_t rounds = 5;       // effective training rounds

    CircuitParams circuit; // deployment dimensions; must cover the effective sizes
    Variant variant = Variant::challenge;
    Mode mode = Mode::multi_shot;

    LedgerConfig ledger;
    std::int64_t dispute_window_s = 86'400;
    std::uint64_t reward_budget_per_round = 1'000'000;

    AggBehavior aggregator = AggBehavior::honest;
    /// First round at which the aggregator misbehaves (1-based).
    size_t activation_round = 0;
    /// Per-participant behavior overrides; everyone else is honest.
    std::map<size_t, PartBehavior> participant_behaviors;
    /// When set, the stale/malicious challenge is filed by an outside account
    /// rather than a participant.
    bool third_party_challenger = false;

    Wei stake_override = 0; // 0 = exact total of generated rewards
    Wei bond_override = 0;  // 0 = contract default

    bool force_finalize_enabled = false;
    std::int64_t force_finalize_timeout_s = 30 * 86'400;

    econ::FrictionWeights weights{econ::Rat(1), econ::Rat(0), econ::Rat(0)};
    econ::GameParameters game;
    /// Configured per-proof generation latency for the friction model.
    econ::Rat proving_time_s{0};
};

void validate(const ScenarioConfig& config); // throws config_invalid

/// Deterministic per-round rewards: rewards[t][i] >= 1 for effective
/// participants, column sums bounded by the per-round budget.
std::vector<std::vector<std::uint64_t>> generate_rewards(std::uint64_t seed, size_t participants, size_t rounds,
                                                         std::uint64_t budget);

struct ActorReport {
    std::string label;
    Wei start_balance = 0;
    Wei end_balance = 0;
    Wei payout_received = 0;
    size_t tx_sent = 0;
};

struct Expectation {
    std::string description;
    bool held = false;
};

struct RejectionEntry {
    size_t participant = 0;
    std::uint64_t round = 0;
    RejectReason reason{};
};

struct ScenarioReport {
    std::string name;
    std::uint64_t seed = 0;
    std::string variant;
    std::string terminal_status;
    bool aggregator_disqualified = false;

    std::vector<ActorReport> actors;
    std::vector<TxReceipt> tx_log;
    std::vector<Event> events;
    std::vector<RejectionEntry> rejections;
    std::vector<std::string> notes; // engine-level economics events (slashing etc.)

    std::map<std::string, std::uint64_t> gas_by_function;
    std::uint64_t total_gas = 0;

    Wei initial_stake = 0;
    Wei total_paid = 0;
    Wei residual_escrow = 0;

    std::string friction; // exact rational, as text
    bool nash_equilibrium = false;
    bool slash_exceeds_gas = false;

    std::vector<Expectation> expectations;
    std::vector<std::string> violated_expectations() const;
    bool all_expectations_hold() const { return violated_expectations().empty(); }

    // Replay payload.
    std::vector<CommitmentRecord> broadcast_records;
    std::vector<std::string> instance_envelopes;
};

ScenarioReport run_scenario(const ScenarioConfig& config);

} // namespace settle
