#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "settle/gas.hpp"

namespace settle::econ {

using BigInt = boost::multiprecision::cpp_int;
/// Exact rational; every economics result is integer-exact, no floats.
using Rat = boost::rational<BigInt>;

Rat rat_from_decimal(std::string_view s); // "0.075" -> 3/40
std::string rat_to_string(const Rat& r);  // "num/den" or plain integer
double rat_to_double(const Rat& r);

// ---- total economic friction -----------------------------------------------

struct FrictionWeights {
    Rat gas;     // w_g
    Rat delay;   // w_p
    Rat compute; // w_c
};

struct FrictionInputs {
    Rat gas_cost;        // C_g
    Rat protocol_delay;  // T_p
    Rat proving_latency; // T_c
};

/// w_g*C_g + w_p*T_p + w_c*T_c.
Rat friction(const FrictionInputs& in, const FrictionWeights& w);

// ---- variant selection ------------------------------------------------------

struct StrategyCosts {
    Rat optimistic_gas; // C_b
    Rat validity_gas;   // C_v, expected >= C_b
    Rat dispute_window; // delta_w, seconds
    Rat proving_time;   // delta_p, seconds
};

enum class VariantChoice { optimistic, validity };

struct VariantDecision {
    VariantChoice choice;
    /// w_p*delta_w - (w_g*(C_v - C_b) + w_c*delta_p); validity iff positive.
    Rat margin;
};

/// Validity pays off only when the opportunity cost of waiting strictly
/// exceeds the verification overhead; ties go optimistic.
VariantDecision select_variant(const StrategyCosts& c, const FrictionWeights& w);

enum class SweepParam { delay_weight, dispute_window, gas_weight, validity_gas, optimistic_gas, compute_weight, proving_time };

/// Closed-form value of the swept parameter where the decision flips, when the
/// remaining terms admit one.
std::optional<Rat> flip_threshold(SweepParam param, const StrategyCosts& c, const FrictionWeights& w);

StrategyCosts with_param(StrategyCosts c, SweepParam param, const Rat& value);
FrictionWeights with_param(FrictionWeights w, SweepParam param, const Rat& value);

// ---- incentive game ---------------------------------------------------------

struct GameParameters {
    // aggregator side
    Rat model_reward{10};  // R_model
    Rat bonus{4};          // R_bonus
    Rat commit_cost{1};    // C_commit
    Rat agg_slash{3};      // P_slash for the aggregator (also the catcher's bounty)
    // participant side
    Rat reward{2};         // R_reward
    Rat steal{2};          // R_steal
    Rat gas_cost{1};       // C_gas
    Rat part_slash{2};     // P_slash for a participant
};

enum class AggStrategy { honest, tamper, abort_task };
enum class PartStrategy { honest, malicious, passive };
const char* strategy_name(AggStrategy s);
const char* strategy_name(PartStrategy s);

struct StrategyProfile {
    AggStrategy aggregator = AggStrategy::honest;
    std::vector<PartStrategy> participants;
    static StrategyProfile all_honest(size_t n);
};

/// Indicator resolution for one participant under a profile: misbehavior is
/// caught when someone is watching (any non-passive participant), an honest
/// participant challenges when justified, and a false challenge fails
/// whenever the aggregator is honest to counter it.
struct Indicators {
    bool caught = false;
    bool challenges = false;
    bool challenge_fails = false;
};
Indicators resolve_indicators(const StrategyProfile& profile, size_t participant);

Rat aggregator_utility(const StrategyProfile& profile, const GameParameters& p);
Rat participant_utility(const StrategyProfile& profile, size_t i, const GameParameters& p);

struct Deviation {
    std::string player;
    std::string strategy;
    Rat utility;
    Rat honest_utility;
};

struct NashReport {
    /// Strict verdict: every unilateral deviation is strictly worse. This is
    /// what "equilibrium" means below; the weak Definition-style verdict is
    /// reported alongside.
    bool equilibrium = false;
    bool weak_equilibrium = false;
    std::vector<Deviation> non_strict; // deviations with utility >= honest
    bool slash_exceeds_gas = false;    // the closed-form condition P_slash > C_gas
};

/// Enumerates every unilateral deviation from the all-honest profile.
NashReport check_nash(const GameParameters& p, size_t participants = 1);

// ---- baseline cost models ---------------------------------------------------

enum class CostModel { commit_challenge, commit_proof, state_channel, active_onchain };
CostModel cost_model_from_name(std::string_view name); // throws unknown_model
const char* cost_model_name(CostModel m);

/// Honest-path total gas. The settlement variants charge per round plus fixed
/// create/finalize and per-batch distribution; the state-channel baseline
/// bills per participant; the active baseline bills every participant every
/// round.
std::uint64_t baseline_total_gas(CostModel model, size_t participants, size_t rounds, size_t batch,
                                 const GasTable& gas);

struct CostRow {
    std::string op;
    std::uint64_t calls = 0;
    std::uint64_t gas_each = 0;
    std::uint64_t gas_total = 0;
};

struct CostBreakdown {
    std::vector<CostRow> rows;
    std::uint64_t total_gas = 0;
};

/// Operation-by-operation deployment cost in the shape of the published
/// table. `include_dispute` adds the one challenge + counter exchange the
/// reference challenge-variant deployment experienced.
CostBreakdown deployment_cost(bool proof_variant, size_t participants, size_t rounds, size_t batch,
                              const GasTable& gas, bool include_dispute);

} // namespace settle::econ
