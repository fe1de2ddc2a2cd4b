#include <doctest.h>

#include "settle/errors.hpp"
#include "settle/ledger.hpp"

using namespace settle;

TEST_CASE("gas to money conversions") {
    MoneyRates rates; // 0.075 gwei, 1950 USD/ETH
    MoneyAmount cp_commit = gas_to_money(280'000, rates);
    CHECK(cp_commit.meth() == doctest::Approx(0.021).epsilon(1e-9));
    CHECK(cp_commit.usd(rates.eth_usd) == doctest::Approx(0.041).epsilon(1e-2));
    CHECK(cp_commit.meth_string(3) == "0.021");

    CHECK(gas_to_money(0, rates).wei == 0);
    CHECK(gas_to_money(0, rates).meth_string() == "0.000000");

    MoneyAmount cc_commit = gas_to_money(66'667, rates);
    CHECK(cc_commit.meth_string(3) == "0.005");
    CHECK(cc_commit.meth() == doctest::Approx(0.005).epsilon(1e-4));
}

TEST_CASE("default gas table pins the calibrated values") {
    GasTable g = default_gas_table();
    CHECK(g.create == 160'000);
    CHECK(g.commit_cp == 281'000);
    CHECK(g.finalize == 66'667);
    CHECK(g.challenge_first == 27'500);
    CHECK(g.challenge_repeat == 25'700);
    CHECK(g.counter == 26'000);
    CHECK(g.distribute_per_batch == 1'466'667);
    CHECK(g.state_channel_per_participant == 456'000);
    // commit row per call at the table price lands on 0.005 mETH
    CHECK(gas_to_money(g.commit_cc, MoneyRates{}).meth_string(3) == "0.005");
}

TEST_CASE("accounts, transfers and conservation") {
    Ledger ledger(LedgerConfig{});
    Address a = ledger.create_account("a", 1000);
    Address b = ledger.create_account("b", 50);
    Wei before = ledger.total_wei();

    ledger.execute(a, "pay", 100, [&] { ledger.transfer(a, b, 700); });
    CHECK(ledger.balance(a) == 300);
    CHECK(ledger.balance(b) == 750);
    CHECK(ledger.total_wei() == before);

    // overdraw reverts and rolls partial work back
    TxReceipt r = ledger.execute(b, "pay", 100, [&] {
        ledger.transfer(b, a, 100);
        ledger.transfer(b, a, 100'000);
    });
    CHECK_FALSE(r.success);
    CHECK(r.revert_reason == "InsufficientBalance");
    CHECK(ledger.balance(b) == 750);
    CHECK(ledger.total_wei() == before);
}

TEST_CASE("reverted transactions still charge the fee") {
    LedgerConfig cfg;
    cfg.charge_fees = true;
    cfg.gas_price_wei = 10;
    Ledger ledger(cfg);
    Address a = ledger.create_account("a", 1'000'000);
    Wei before_total = ledger.total_wei();

    TxReceipt r = ledger.execute(a, "boom", 1000, [&] { throw Revert{"Nope"}; });
    CHECK_FALSE(r.success);
    CHECK(r.gas_used == 1000);
    CHECK(ledger.balance(a) == 1'000'000 - 10'000);
    CHECK(ledger.balance(kBurnAddress) == 10'000);
    CHECK(ledger.total_wei() == before_total); // burn account stays in the total
}

TEST_CASE("fee shortfall blocks execution entirely") {
    LedgerConfig cfg;
    cfg.charge_fees = true;
    cfg.gas_price_wei = 1'000'000;
    Ledger ledger(cfg);
    Address poor = ledger.create_account("poor", 5);
    bool ran = false;
    TxReceipt r = ledger.execute(poor, "anything", 1000, [&] { ran = true; });
    CHECK_FALSE(r.success);
    CHECK(r.revert_reason == "InsufficientBalance");
    CHECK_FALSE(ran);
    CHECK(ledger.balance(poor) == 5);
}

TEST_CASE("per-transaction gas limit") {
    Ledger ledger(LedgerConfig{});
    Address a = ledger.create_account("a", 0);
    TxReceipt r = ledger.execute(a, "huge", (1ULL << 24) + 1, [] {});
    CHECK_FALSE(r.success);
    CHECK(r.revert_reason == "GasLimit");
}

TEST_CASE("unknown function reverts") {
    Ledger ledger(LedgerConfig{});
    Address a = ledger.create_account("a", 0);
    TxReceipt r = ledger.call_unknown(a, "bogus");
    CHECK_FALSE(r.success);
    CHECK(r.revert_reason == "UnknownFunction");
    CHECK(r.gas_used > 0);
}

TEST_CASE("time advances monotonically and blocks tick") {
    LedgerConfig cfg;
    cfg.block_interval_s = 12;
    Ledger ledger(cfg);
    Address a = ledger.create_account("a", 0);

    CHECK(ledger.now() == 0);
    ledger.advance_time(0);
    CHECK(ledger.now() == 0);
    ledger.advance_time(100);
    CHECK(ledger.now() == 100);
    CHECK_THROWS_AS(ledger.advance_time(-1), Error);

    std::int64_t last = 0;
    for (int i = 0; i < 5; ++i) {
        TxReceipt r = ledger.execute(a, "tick", 1, [] {});
        CHECK(r.block_timestamp > last);
        last = r.block_timestamp;
    }
    CHECK(last == 100 + 5 * 12);
}

TEST_CASE("events roll back with the transaction") {
    Ledger ledger(LedgerConfig{});
    Address a = ledger.create_account("a", 0);
    ledger.execute(a, "ok", 1, [&] { ledger.emit_event("kept", {}); });
    ledger.execute(a, "bad", 1, [&] {
        ledger.emit_event("dropped", {});
        throw Revert{"X"};
    });
    REQUIRE(ledger.events().size() == 1);
    CHECK(ledger.events()[0].name == "kept");
}

TEST_CASE("tx log export") {
    Ledger ledger(LedgerConfig{});
    Address a = ledger.create_account("alice", 0);
    ledger.execute(a, "f", 42, [] {});
    std::string csv = ledger.tx_log_csv();
    CHECK(csv.find("index,timestamp,sender,function,gas_used,success,revert_reason") != std::string::npos);
    CHECK(csv.find("alice,f,42,1,") != std::string::npos);
}
