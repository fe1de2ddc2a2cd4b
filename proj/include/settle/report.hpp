#pragma once

#include <string>

#include "settle/scenario.hpp"

namespace settle {

/// report.json payload: schema-versioned, byte-stable for a fixed config+seed
/// (all numbers serialized as decimal strings or integers, never floats).
std::string report_to_json(const ScenarioReport& report, const MoneyRates& rates);

/// gas.csv: one row per contract function with call counts and money columns.
std::string gas_breakdown_csv(const ScenarioReport& report, const MoneyRates& rates);

/// Replay envelope: commitments plus every proof instance, self-describing text.
std::string replay_text(const ScenarioReport& report);

void write_file(const std::string& path, const std::string& content); // throws io_error

} // namespace settle
