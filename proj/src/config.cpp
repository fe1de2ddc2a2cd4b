#include "settle/config.hpp"

#include <fstream>
#include <sstream>

#include "settle/errors.hpp"

namespace settle {

namespace {

[[noreturn]] void bad(const std::string& origin, size_t line, const std::string& what) {
    fail(Errc::config_invalid, origin + ":" + std::to_string(line) + ": " + what);
}

bool parse_bool(const std::string& v, const std::string& origin, size_t line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad(origin, line, "expected a boolean, got \"" + v + "\"");
}

std::uint64_t parse_u64(const std::string& v, const std::string& origin, size_t line) {
    if (v.empty()) bad(origin, line, "expected a number");
    std::uint64_t out = 0;
    for (char ch : v) {
        if (ch < '0' || ch > '9') bad(origin, line, "expected an unsigned integer, got \"" + v + "\"");
        std::uint64_t next = out * 10 + (std::uint64_t)(ch - '0');
        if (next < out) bad(origin, line, "integer overflow in \"" + v + "\"");
        out = next;
    }
    return out;
}

std::int64_t parse_i64(const std::string& v, const std::string& origin, size_t line) {
    if (!v.empty() && v[0] == '-') bad(origin, line, "negative values not allowed here");
    return (std::int64_t)parse_u64(v, origin, line);
}

econ::Rat parse_rat(const std::string& v, const std::string& origin, size_t line) {
    try {
        return econ::rat_from_decimal(v);
    } catch (const Error& e) {
        bad(origin, line, e.what());
    }
}

std::uint64_t parse_gwei_to_wei(const std::string& v, const std::string& origin, size_t line) {
    econ::Rat gwei = parse_rat(v, origin, line);
    econ::Rat wei = gwei * econ::Rat(1'000'000'000);
    if (wei.denominator() != 1) bad(origin, line, "gas price must be a whole number of wei");
    if (wei.numerator() < 0) bad(origin, line, "gas price must be non-negative");
    return wei.numerator().convert_to<std::uint64_t>();
}

struct Setter {
    LoadedConfig& cfg;
    const std::string& origin;
    size_t line;

    void set(const std::string& section, const std::string& key, const std::string& value) {
        ScenarioConfig& s = cfg.scenario;
        auto u64 = [&] { return parse_u64(value, origin, line); };
        auto i64 = [&] { return parse_i64(value, origin, line); };
        auto flag = [&] { return parse_bool(value, origin, line); };
        auto rat = [&] { return parse_rat(value, origin, line); };

        if (section == "scenario") {
            if (key == "name") s.name = value;
            else if (key == "seed") s.seed = u64();
            else if (key == "participants") s.participants = u64();
            else if (key == "rounds") s.rounds = u64();
            else if (key == "variant") {
                if (value == "challenge") s.variant = Variant::challenge;
                else if (value == "proof") s.variant = Variant::proof;
                else bad(origin, line, "variant must be challenge or proof");
            } else if (key == "mode") {
                if (value == "multi-shot") s.mode = Mode::multi_shot;
                else if (value == "one-shot") s.mode = Mode::one_shot;
                else bad(origin, line, "mode must be one-shot or multi-shot");
            } else bad(origin, line, "unknown key scenario." + key);
        } else if (section == "circuit") {
            if (key == "max_rounds") s.circuit.max_rounds = u64();
            else if (key == "max_participants") s.circuit.max_participants = u64();
            else if (key == "batch_size") s.circuit.batch_size = u64();
            else if (key == "hash_arity") s.circuit.hash.max_arity = (unsigned)u64();
            else if (key == "hash_rounds") s.circuit.hash.rounds = (unsigned)u64();
            else if (key == "sbox_exponent") s.circuit.hash.sbox_exponent = (unsigned)u64();
            else if (key == "constant_seed") s.circuit.hash.constant_seed = u64();
            else if (key == "field_modulus") cfg.field_modulus_decimal = value;
            else bad(origin, line, "unknown key circuit." + key);
        } else if (section == "ledger") {
            if (key == "block_interval_s") s.ledger.block_interval_s = i64();
            else if (key == "gas_price_gwei") s.ledger.gas_price_wei = parse_gwei_to_wei(value, origin, line);
            else if (key == "eth_usd") s.ledger.eth_usd = u64();
            else if (key == "charge_fees") s.ledger.charge_fees = flag();
            else if (key == "tx_gas_limit") s.ledger.tx_gas_limit = u64();
            else if (key == "max_batch_size") s.ledger.max_batch_size = u64();
            else bad(origin, line, "unknown key ledger." + key);
        } else if (section == "contract") {
            if (key == "dispute_window_s") s.dispute_window_s = i64();
            else if (key == "stake_wei") s.stake_override = (Wei)u64();
            else if (key == "challenge_bond_wei") s.bond_override = (Wei)u64();
            else if (key == "force_finalize") s.force_finalize_enabled = flag();
            else if (key == "force_finalize_timeout_s") s.force_finalize_timeout_s = i64();
            else bad(origin, line, "unknown key contract." + key);
        } else if (section == "rewards") {
            if (key == "budget_per_round") s.reward_budget_per_round = u64();
            else bad(origin, line, "unknown key rewards." + key);
        } else if (section == "aggregator") {
            if (key == "behavior") {
                try {
                    s.aggregator = agg_behavior_from_name(value);
                } catch (const Error& e) {
                    bad(origin, line, e.what());
                }
            } else if (key == "activation_round") s.activation_round = u64();
            else bad(origin, line, "unknown key aggregator." + key);
        } else if (section == "participants") {
            if (key.rfind("behavior.", 0) == 0) {
                size_t idx = parse_u64(key.substr(9), origin, line);
                try {
                    s.participant_behaviors[idx] = part_behavior_from_name(value);
                } catch (const Error& e) {
                    bad(origin, line, e.what());
                }
            } else bad(origin, line, "unknown key participants." + key);
        } else if (section == "challenger") {
            if (key == "third_party") s.third_party_challenger = flag();
            else bad(origin, line, "unknown key challenger." + key);
        } else if (section == "economics") {
            if (key == "w_g") s.weights.gas = rat();
            else if (key == "w_p") s.weights.delay = rat();
            else if (key == "w_c") s.weights.compute = rat();
            else if (key == "proving_time_s") s.proving_time_s = rat();
            else if (key == "r_model") s.game.model_reward = rat();
            else if (key == "r_bonus") s.game.bonus = rat();
            else if (key == "c_commit") s.game.commit_cost = rat();
            else if (key == "p_slash_agg") s.game.agg_slash = rat();
            else if (key == "r_reward") s.game.reward = rat();
            else if (key == "r_steal") s.game.steal = rat();
            else if (key == "c_gas") s.game.gas_cost = rat();
            else if (key == "p_slash_i") s.game.part_slash = rat();
            else bad(origin, line, "unknown key economics." + key);
        } else if (section == "gas") {
            GasTable& g = s.ledger.gas;
            if (key == "create") g.create = u64();
            else if (key == "commit_cc") g.commit_cc = u64();
            else if (key == "commit_cp") g.commit_cp = u64();
            else if (key == "finalize") g.finalize = u64();
            else if (key == "challenge_first") g.challenge_first = u64();
            else if (key == "challenge_repeat") g.challenge_repeat = u64();
            else if (key == "counter") g.counter = u64();
            else if (key == "distribute_per_batch") g.distribute_per_batch = u64();
            else if (key == "state_channel_per_participant") g.state_channel_per_participant = u64();
            else if (key == "active_per_participant_round") g.active_per_participant_round = u64();
            else bad(origin, line, "unknown key gas." + key);
        } else {
            bad(origin, line, "unknown section [" + section + "]");
        }
    }
};

std::string trim(std::string s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

} // namespace

LoadedConfig parse_config_text(std::string_view text, const std::string& origin) {
    LoadedConfig cfg;
    // Dimensions left unset derive from the effective sizes after parsing.
    cfg.scenario.circuit.max_rounds = 0;
    cfg.scenario.circuit.max_participants = 0;
    cfg.scenario.circuit.batch_size = 0;
    std::istringstream is{std::string(text)};
    std::string raw, section;
    size_t line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') bad(origin, line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) bad(origin, line_no, "empty section name");
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) bad(origin, line_no, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) bad(origin, line_no, "empty key");
        if (section.empty()) bad(origin, line_no, "key outside any [section]");
        Setter{cfg, origin, line_no}.set(section, key, value);
    }
    // Default deployment dimensions track the effective sizes.
    if (cfg.scenario.circuit.max_rounds == 0) cfg.scenario.circuit.max_rounds = cfg.scenario.rounds;
    if (cfg.scenario.circuit.max_participants == 0) cfg.scenario.circuit.max_participants = cfg.scenario.participants;
    if (cfg.scenario.circuit.batch_size == 0)
        cfg.scenario.circuit.batch_size = cfg.scenario.mode == Mode::one_shot
                                              ? cfg.scenario.circuit.max_participants
                                              : std::max<size_t>(1, (cfg.scenario.circuit.max_participants + 1) / 2);
    return cfg;
}

LoadedConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_error, "cannot open config file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

void apply_override(LoadedConfig& config, std::string_view dotted_key, std::string_view value) {
    size_t dot = dotted_key.find('.');
    if (dot == std::string_view::npos)
        fail(Errc::config_invalid, "override key must be section.key, got \"" + std::string(dotted_key) + "\"");
    std::string section(dotted_key.substr(0, dot));
    std::string key(dotted_key.substr(dot + 1));
    Setter{config, "<override>", 0}.set(section, key, std::string(value));
}

} // namespace settle
