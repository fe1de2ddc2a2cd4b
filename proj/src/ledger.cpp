#include "settle/ledger.hpp"

#include <sstream>

#include "settle/errors.hpp"

namespace settle {

Address Ledger::create_account(const std::string& label, Wei balance) {
    Address a = next_account_++;
    balances_[a] = balance;
    labels_[a] = label;
    return a;
}

const std::string& Ledger::label(Address a) const {
    static const std::string unknown = "?";
    auto it = labels_.find(a);
    return it == labels_.end() ? unknown : it->second;
}

Wei Ledger::balance(Address a) const {
    auto it = balances_.find(a);
    return it == balances_.end() ? 0 : it->second;
}

Wei Ledger::total_wei() const {
    Wei total = 0;
    for (const auto& [addr, bal] : balances_) total += bal;
    return total;
}

void Ledger::advance_time(std::int64_t dt) {
    if (dt < 0) fail(Errc::out_of_range, "time cannot move backwards");
    now_ += dt;
}

void Ledger::transfer(Address from, Address to, Wei amount) {
    Wei& src = balances_[from];
    if (src < amount) throw Revert{"InsufficientBalance"};
    src -= amount;
    balances_[to] += amount;
}

void Ledger::credit(Address to, Wei amount) { balances_[to] += amount; }

void Ledger::emit_event(const std::string& name, std::vector<std::pair<std::string, std::string>> fields) {
    events_.push_back(Event{now_, name, std::move(fields)});
}

TxReceipt Ledger::execute(Address sender, const std::string& function, std::uint64_t gas,
                          const std::function<void()>& body) {
    now_ += cfg_.block_interval_s; // the transaction lands in the next block

    TxReceipt receipt;
    receipt.index = log_.size();
    receipt.sender = sender;
    receipt.function = function;
    receipt.gas_used = gas;
    receipt.block_timestamp = now_;

    Wei fee = cfg_.charge_fees ? (Wei)gas * cfg_.gas_price_wei : 0;
    if (cfg_.charge_fees && balance(sender) < fee) {
        receipt.success = false;
        receipt.revert_reason = "InsufficientBalance";
        log_.push_back(receipt);
        return receipt;
    }

    if (gas > cfg_.tx_gas_limit) {
        receipt.success = false;
        receipt.revert_reason = "GasLimit";
        if (fee) transfer(sender, kBurnAddress, fee);
        log_.push_back(receipt);
        return receipt;
    }

    auto balances_snapshot = balances_;
    size_t events_mark = events_.size();
    try {
        body();
        receipt.success = true;
    } catch (const Revert& r) {
        balances_ = std::move(balances_snapshot);
        events_.resize(events_mark);
        receipt.success = false;
        receipt.revert_reason = r.reason;
    }
    if (fee) transfer(sender, kBurnAddress, fee);
    log_.push_back(receipt);
    return receipt;
}

TxReceipt Ledger::call_unknown(Address sender, const std::string& function) {
    return execute(sender, function, 21'000, [] { throw Revert{"UnknownFunction"}; });
}

std::string Ledger::tx_log_csv() const {
    std::ostringstream os;
    os << "index,timestamp,sender,function,gas_used,success,revert_reason\n";
    for (const TxReceipt& r : log_) {
        os << r.index << "," << r.block_timestamp << "," << label(r.sender) << "," << r.function << "," << r.gas_used
           << "," << (r.success ? 1 : 0) << "," << r.revert_reason << "\n";
    }
    return os.str();
}

} // namespace settle
