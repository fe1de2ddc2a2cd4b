#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "settle/gas.hpp"

namespace settle {

using Address = std::uint64_t;
inline constexpr Address kBurnAddress = ~0ULL;

/// Thrown by contract code to abort the current transaction. The ledger rolls
/// balances and events back and records a failed receipt; never escapes a
/// submit call.
struct Revert {
    std::string reason;
};

struct TxReceipt {
    std::uint64_t index = 0;
    Address sender = 0;
    std::string function;
    std::uint64_t gas_used = 0;
    bool success = false;
    std::string revert_reason;
    std::int64_t block_timestamp = 0;
};

struct Event {
    std::int64_t timestamp = 0;
    std::string name;
    std::vector<std::pair<std::string, std::string>> fields;
};

struct LedgerConfig {
    std::int64_t block_interval_s = 12;
    std::uint64_t gas_price_wei = 75'000'000;
    std::uint64_t eth_usd = 1950;
    bool charge_fees = false;
    std::uint64_t tx_gas_limit = 1ULL << 24;
    std::uint64_t max_batch_size = 70; // contract-size deployment cap
    GasTable gas;
};

/// Deterministic single-executor ledger: logical time, accounts, gas-metered
/// transaction execution with rollback, and an event log. Transactions apply
/// one at a time in submission order.
class Ledger {
public:
    explicit Ledger(const LedgerConfig& cfg) : cfg_(cfg) {}

    const LedgerConfig& config() const { return cfg_; }

    Address create_account(const std::string& label, Wei balance);
    const std::string& label(Address a) const;
    Wei balance(Address a) const;
    /// Sum over every account, burn included. Constant under transfers.
    Wei total_wei() const;

    std::int64_t now() const { return now_; }
    void advance_time(std::int64_t dt);

    /// Runs `body` as one transaction: a block is produced, gas is metered and
    /// (optionally) charged, and a Revert inside the body rolls back balances
    /// and events while still charging the fee.
    TxReceipt execute(Address sender, const std::string& function, std::uint64_t gas, const std::function<void()>& body);

    /// A call to a function nobody exposes; reverts with base gas billed.
    TxReceipt call_unknown(Address sender, const std::string& function);

    // Usable inside transaction bodies.
    void transfer(Address from, Address to, Wei amount); // throws Revert on shortfall
    void credit(Address to, Wei amount);
    void emit_event(const std::string& name, std::vector<std::pair<std::string, std::string>> fields);

    const std::vector<TxReceipt>& tx_log() const { return log_; }
    const std::vector<Event>& events() const { return events_; }

    std::string tx_log_csv() const;

private:
    LedgerConfig cfg_;
    std::int64_t now_ = 0;
    std::map<Address, Wei> balances_;
    std::map<Address, std::string> labels_;
    Address next_account_ = 1;
    std::vector<TxReceipt> log_;
    std::vector<Event> events_;
};

} // namespace settle
