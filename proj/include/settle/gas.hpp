#pragma once

#include <cstdint>
#include <string>

namespace settle {

using Wei = unsigned __int128;

std::string wei_to_string(Wei w);

/// Per-function gas charges, calibrated to published testnet measurements at
/// a 0.075 gwei gas price, plus the per-unit slopes of the two baseline cost
/// models (a state-channel design billing per participant and an active
/// design billing every participant every round). All values configurable.
struct GasTable {
    std::uint64_t create = 160'000;
    std::uint64_t commit_cc = 66'667;
    std::uint64_t commit_cp = 281'000;
    std::uint64_t finalize = 66'667;
    std::uint64_t challenge_first = 27'500;
    std::uint64_t challenge_repeat = 25'700;
    std::uint64_t counter = 26'000;
    std::uint64_t distribute_per_batch = 1'466'667;
    std::uint64_t state_channel_per_participant = 456'000;
    std::uint64_t active_per_participant_round = 50'000;

    bool operator==(const GasTable&) const = default;
};

GasTable default_gas_table();

struct MoneyRates {
    std::uint64_t gas_price_wei = 75'000'000; // 0.075 gwei
    std::uint64_t eth_usd = 1950;
};

/// Exact wei amount with derived display units.
struct MoneyAmount {
    Wei wei = 0;

    double meth() const { return double(wei) / 1e15; }
    double usd(std::uint64_t eth_usd) const { return double(wei) / 1e18 * double(eth_usd); }
    /// Fixed-point decimal strings (exact, round-half-up).
    std::string meth_string(int decimals = 6) const;
    std::string usd_string(std::uint64_t eth_usd, int decimals = 2) const;
};

MoneyAmount gas_to_money(std::uint64_t gas, const MoneyRates& rates);

} // namespace settle
