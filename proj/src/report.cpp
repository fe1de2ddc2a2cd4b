#include "settle/report.hpp"

#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "settle/errors.hpp"

namespace settle {

using ordered_json = nlohmann::ordered_json;

std::string report_to_json(const ScenarioReport& report, const MoneyRates& rates) {
    ordered_json j;
    j["schema_version"] = 1;
    j["name"] = report.name;
    j["seed"] = report.seed;
    j["variant"] = report.variant;
    j["terminal_status"] = report.terminal_status;
    j["aggregator_disqualified"] = report.aggregator_disqualified;

    j["stake_wei"] = wei_to_string(report.initial_stake);
    j["total_paid_wei"] = wei_to_string(report.total_paid);
    j["residual_escrow_wei"] = wei_to_string(report.residual_escrow);
    j["total_gas"] = report.total_gas;
    j["total_cost_meth"] = gas_to_money(report.total_gas, rates).meth_string();
    j["total_cost_usd"] = gas_to_money(report.total_gas, rates).usd_string(rates.eth_usd);
    j["friction"] = report.friction;
    j["nash_equilibrium"] = report.nash_equilibrium;
    j["slash_exceeds_gas"] = report.slash_exceeds_gas;

    ordered_json actors = ordered_json::array();
    for (const ActorReport& a : report.actors) {
        ordered_json e;
        e["label"] = a.label;
        e["start_balance_wei"] = wei_to_string(a.start_balance);
        e["end_balance_wei"] = wei_to_string(a.end_balance);
        e["payout_wei"] = wei_to_string(a.payout_received);
        e["tx_sent"] = a.tx_sent;
        actors.push_back(e);
    }
    j["actors"] = actors;

    ordered_json txs = ordered_json::array();
    for (const TxReceipt& r : report.tx_log) {
        ordered_json e;
        e["index"] = r.index;
        e["timestamp"] = r.block_timestamp;
        e["sender"] = r.sender;
        e["function"] = r.function;
        e["gas_used"] = r.gas_used;
        e["success"] = r.success;
        if (!r.success) e["revert_reason"] = r.revert_reason;
        txs.push_back(e);
    }
    j["tx_log"] = txs;

    ordered_json events = ordered_json::array();
    for (const Event& ev : report.events) {
        ordered_json e;
        e["timestamp"] = ev.timestamp;
        e["name"] = ev.name;
        ordered_json fields;
        for (const auto& [k, v] : ev.fields) fields[k] = v;
        e["fields"] = fields;
        events.push_back(e);
    }
    j["events"] = events;

    ordered_json rejections = ordered_json::array();
    for (const RejectionEntry& r : report.rejections) {
        ordered_json e;
        e["participant"] = r.participant;
        e["round"] = r.round;
        e["reason"] = reject_reason_name(r.reason);
        rejections.push_back(e);
    }
    j["rejections"] = rejections;
    j["notes"] = report.notes;

    ordered_json expectations = ordered_json::array();
    for (const Expectation& e : report.expectations) {
        ordered_json x;
        x["description"] = e.description;
        x["held"] = e.held;
        expectations.push_back(x);
    }
    j["expectations"] = expectations;
    j["violated_expectations"] = report.violated_expectations();

    return j.dump(2) + "\n";
}

std::string gas_breakdown_csv(const ScenarioReport& report, const MoneyRates& rates) {
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> by_fn; // calls, gas
    for (const TxReceipt& r : report.tx_log) {
        auto& slot = by_fn[r.function];
        slot.first += 1;
        slot.second += r.gas_used;
    }
    std::ostringstream os;
    os << "function,calls,gas_total,meth,usd\n";
    for (const auto& [fn, cg] : by_fn) {
        MoneyAmount m = gas_to_money(cg.second, rates);
        os << fn << "," << cg.first << "," << cg.second << "," << m.meth_string() << "," << m.usd_string(rates.eth_usd)
           << "\n";
    }
    MoneyAmount total = gas_to_money(report.total_gas, rates);
    os << "total," << report.tx_log.size() << "," << report.total_gas << "," << total.meth_string() << ","
       << total.usd_string(rates.eth_usd) << "\n";
    return os.str();
}

std::string replay_text(const ScenarioReport& report) {
    std::ostringstream os;
    os << "replay v1\n";
    os << "scenario " << report.name << "\n";
    os << "seed " << report.seed << "\n";
    os << "commitments " << report.broadcast_records.size() << "\n";
    for (const CommitmentRecord& r : report.broadcast_records) {
        os << r.round << " " << r.c.to_decimal() << " " << r.sig.s1.to_decimal() << " " << r.sig.s2.to_decimal()
           << "\n";
    }
    os << "instances " << report.instance_envelopes.size() << "\n";
    for (const std::string& env : report.instance_envelopes) {
        os << "---\n";
        os << env;
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot open " + path + " for writing");
    out << content;
    if (!out) fail(Errc::io_error, "write failed: " + path);
}

} // namespace settle
