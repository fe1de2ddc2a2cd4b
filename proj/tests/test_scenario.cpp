#include <doctest.h>

#include "settle/report.hpp"
#include "settle/scenario.hpp"

using namespace settle;

namespace {

ScenarioConfig desk_config(Variant variant) {
    ScenarioConfig c;
    c.name = "desk";
    c.seed = 5;
    c.participants = 6;
    c.rounds = 4;
    c.circuit.max_participants = 6;
    c.circuit.max_rounds = 4;
    c.circuit.batch_size = 3;
    c.variant = variant;
    c.dispute_window_s = 7200;
    return c;
}

} // namespace

TEST_CASE("reward generator is deterministic and budgeted") {
    auto a = generate_rewards(9, 8, 5, 1000);
    auto b = generate_rewards(9, 8, 5, 1000);
    CHECK(a == b);
    auto c = generate_rewards(10, 8, 5, 1000);
    CHECK(a != c);

    for (const auto& round : a) {
        std::uint64_t sum = 0;
        for (std::uint64_t cell : round) {
            CHECK(cell >= 1);
            sum += cell;
        }
        CHECK(sum <= 1000);
    }
}

TEST_CASE("honest challenge-variant run distributes exactly") {
    ScenarioReport rep = run_scenario(desk_config(Variant::challenge));
    CHECK(rep.terminal_status == "Distributed");
    CHECK(rep.all_expectations_hold());
    CHECK(rep.total_paid + rep.residual_escrow == rep.initial_stake);
    CHECK(rep.residual_escrow == 0); // auto stake covers rewards exactly
    for (const RejectionEntry& r : rep.rejections) (void)r, CHECK(false);
}

TEST_CASE("honest proof-variant run: same payouts, no challenges, no waiting") {
    ScenarioReport cc = run_scenario(desk_config(Variant::challenge));
    ScenarioConfig pcfg = desk_config(Variant::proof);
    ScenarioReport cp = run_scenario(pcfg);

    CHECK(cp.terminal_status == "Distributed");
    CHECK(cp.all_expectations_hold());
    CHECK(cp.total_paid == cc.total_paid); // same seed, same rewards

    for (const TxReceipt& r : cp.tx_log) {
        CHECK(r.function != "challenge");
        CHECK(r.function != "counter");
    }
    // friction with pure delay weight: the proof variant never waits
    ScenarioConfig delay_weighted = pcfg;
    delay_weighted.weights = {econ::Rat(0), econ::Rat(1), econ::Rat(0)};
    CHECK(run_scenario(delay_weighted).friction == "0");
}

TEST_CASE("honest participants never send transactions") {
    ScenarioReport rep = run_scenario(desk_config(Variant::challenge));
    for (const TxReceipt& r : rep.tx_log) CHECK(rep.actors[0].label == "aggregator"), CHECK(r.sender != 0);
    // the engine's own expectation covers the sender set; double-check here
    bool found = false;
    for (const Expectation& e : rep.expectations)
        if (e.description.find("participants never transact") != std::string::npos) {
            found = true;
            CHECK(e.held);
        }
    CHECK(found);
}

TEST_CASE("determinism: identical config and seed give identical reports") {
    ScenarioConfig cfg = desk_config(Variant::challenge);
    ScenarioReport a = run_scenario(cfg);
    ScenarioReport b = run_scenario(cfg);
    MoneyRates rates;
    CHECK(report_to_json(a, rates) == report_to_json(b, rates));
    CHECK(gas_breakdown_csv(a, rates) == gas_breakdown_csv(b, rates));
    CHECK(replay_text(a) == replay_text(b));

    ScenarioConfig other = cfg;
    other.seed = 6;
    ScenarioReport c = run_scenario(other);
    CHECK(report_to_json(a, rates) != report_to_json(c, rates));
}

TEST_CASE("per-round commit gas does not depend on the participant count") {
    ScenarioConfig small = desk_config(Variant::challenge);
    ScenarioConfig large = desk_config(Variant::challenge);
    large.participants = 12;
    large.circuit.max_participants = 12;
    large.circuit.batch_size = 6;

    auto commit_gas = [](const ScenarioReport& r) {
        std::uint64_t gas = 0;
        for (const TxReceipt& t : r.tx_log)
            if (t.function == "commit") gas = t.gas_used;
        return gas;
    };
    CHECK(commit_gas(run_scenario(small)) == commit_gas(run_scenario(large)));
}

TEST_CASE("threat 1: commitment reversal is caught and cannot be countered") {
    ScenarioConfig cfg = desk_config(Variant::challenge);
    cfg.name = "reversal";
    cfg.aggregator = AggBehavior::commitment_reversal;
    cfg.activation_round = 3;
    ScenarioReport rep = run_scenario(cfg);

    CHECK(rep.all_expectations_hold());
    CHECK(rep.aggregator_disqualified);
    REQUIRE(!rep.rejections.empty());
    CHECK(rep.rejections.front().round == 3);
    CHECK(rep.rejections.front().reason == RejectReason::hash_mismatch);

    bool challenge_ok = false, counter_failed = true;
    for (const TxReceipt& r : rep.tx_log) {
        if (r.function == "challenge") challenge_ok = r.success;
        if (r.function == "counter") counter_failed = !r.success;
    }
    CHECK(challenge_ok);
    CHECK(counter_failed);
    CHECK(rep.terminal_status == "Challenged");
}

TEST_CASE("threat 2: refusal to commit leaves earlier rounds settled") {
    ScenarioConfig cfg = desk_config(Variant::challenge);
    cfg.name = "refusal";
    cfg.aggregator = AggBehavior::refusal_to_commit;
    cfg.activation_round = 3;
    ScenarioReport rep = run_scenario(cfg);
    CHECK(rep.all_expectations_hold());
    CHECK(rep.terminal_status == "Committed"); // never finalized
    CHECK(rep.broadcast_records.size() == 2);

    SUBCASE("force-finalize extension recovers the committed rounds") {
        ScenarioConfig rescue = cfg;
        rescue.force_finalize_enabled = true;
        ScenarioReport saved = run_scenario(rescue);
        CHECK(saved.terminal_status == "Distributed");
        bool forced = false;
        for (const TxReceipt& r : saved.tx_log) forced = forced || (r.function == "force_finalize" && r.success);
        CHECK(forced);
    }
}

TEST_CASE("threat 3: withheld distribution is completed by a participant") {
    ScenarioConfig cfg = desk_config(Variant::challenge);
    cfg.name = "withholding";
    cfg.aggregator = AggBehavior::reward_withholding;
    ScenarioReport rep = run_scenario(cfg);
    CHECK(rep.all_expectations_hold());
    CHECK(rep.terminal_status == "Distributed");
    bool participant_distributed = false;
    for (const TxReceipt& r : rep.tx_log)
        if (r.function == "distribute" && r.success) participant_distributed = true;
    CHECK(participant_distributed);
    // distribution came from participant0, not the owner
    for (const ActorReport& a : rep.actors)
        if (a.label == "participant0") CHECK(a.tx_sent > 0);
}

TEST_CASE("threat 4: stale challenge is countered and the bond moves") {
    ScenarioConfig cfg = desk_config(Variant::challenge);
    cfg.name = "stale";
    cfg.participant_behaviors[2] = PartBehavior::stale_challenger;
    ScenarioReport rep = run_scenario(cfg);
    CHECK(rep.all_expectations_hold());
    CHECK(rep.terminal_status == "Distributed");

    size_t stale_reverts = 0;
    for (const TxReceipt& r : rep.tx_log)
        if (r.function == "challenge" && !r.success && r.revert_reason == "StaleRound") ++stale_reverts;
    CHECK(stale_reverts == 2);
}

TEST_CASE("third-party challengers are permitted") {
    ScenarioConfig cfg = desk_config(Variant::challenge);
    cfg.name = "third-party-stale";
    cfg.third_party_challenger = true;
    ScenarioReport rep = run_scenario(cfg);
    CHECK(rep.all_expectations_hold());
    for (const ActorReport& a : rep.actors)
        if (a.label == "third-party") CHECK(a.tx_sent > 0);
}

TEST_CASE("config validation rejects contradictions") {
    ScenarioConfig cfg = desk_config(Variant::proof);
    cfg.aggregator = AggBehavior::commitment_reversal;
    cfg.activation_round = 3;
    CHECK_THROWS_AS((void)run_scenario(cfg), Error);

    ScenarioConfig bad = desk_config(Variant::challenge);
    bad.circuit.max_participants = 2; // below the effective roster
    CHECK_THROWS_AS((void)run_scenario(bad), Error);

    ScenarioConfig one_shot = desk_config(Variant::challenge);
    one_shot.mode = Mode::one_shot; // batch below the roster
    CHECK_THROWS_AS((void)run_scenario(one_shot), Error);
}

TEST_CASE("fee-charging runs conserve total wei including the burn account") {
    ScenarioConfig cfg = desk_config(Variant::challenge);
    cfg.ledger.charge_fees = true;
    ScenarioReport rep = run_scenario(cfg);
    CHECK(rep.all_expectations_hold());
    // actors paid fees, so end balances differ from payouts alone
    bool aggregator_paid_fees = false;
    for (const ActorReport& a : rep.actors)
        if (a.label == "aggregator") aggregator_paid_fees = a.end_balance < a.start_balance - rep.total_paid + rep.total_paid;
    CHECK(aggregator_paid_fees);
}
