#include <CLI11.hpp>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "settle/config.hpp"
#include "settle/economics.hpp"
#include "settle/errors.hpp"
#include "settle/report.hpp"
#include "settle/scenario.hpp"

namespace fs = std::filesystem;
using namespace settle;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitConfig = 2;

struct RunOptions {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    std::int64_t seed = -1;
};

LoadedConfig load_with_overrides(const RunOptions& opt) {
    LoadedConfig cfg = load_config_file(opt.config_path);
    for (const std::string& ov : opt.overrides) {
        size_t eq = ov.find('=');
        if (eq == std::string::npos) fail(Errc::config_invalid, "--set expects section.key=value, got " + ov);
        apply_override(cfg, ov.substr(0, eq), ov.substr(eq + 1));
    }
    if (opt.seed >= 0) cfg.scenario.seed = (std::uint64_t)opt.seed;
    return cfg;
}

void install_modulus(const LoadedConfig& cfg) {
    if (!cfg.field_modulus_decimal.empty()) set_global_modulus(u256_from_decimal(cfg.field_modulus_decimal));
}

void write_run_outputs(const ScenarioReport& report, const MoneyRates& rates, const std::string& out_dir) {
    if (out_dir.empty()) return;
    fs::create_directories(out_dir);
    write_file(out_dir + "/report.json", report_to_json(report, rates));
    write_file(out_dir + "/gas.csv", gas_breakdown_csv(report, rates));
    write_file(out_dir + "/replay.txt", replay_text(report));
}

int cmd_run(const RunOptions& opt) {
    LoadedConfig cfg = load_with_overrides(opt);
    install_modulus(cfg);
    validate(cfg.scenario);
    ScenarioReport report = run_scenario(cfg.scenario);
    MoneyRates rates{cfg.scenario.ledger.gas_price_wei, cfg.scenario.ledger.eth_usd};
    write_run_outputs(report, rates, opt.out_dir);

    std::cout << "scenario " << report.name << ": terminal=" << report.terminal_status << " gas=" << report.total_gas
              << " paid=" << wei_to_string(report.total_paid) << " wei\n";
    for (const Expectation& e : report.expectations)
        std::cout << (e.held ? "  [ok]   " : "  [FAIL] ") << e.description << "\n";
    return report.all_expectations_hold() ? kExitOk : kExitAssertion;
}

int cmd_sweep(const RunOptions& opt, const std::string& sweep_spec, unsigned parallel) {
    size_t eq = sweep_spec.find('=');
    if (eq == std::string::npos) fail(Errc::config_invalid, "--sweep expects section.key=v1,v2,...");
    std::string key = sweep_spec.substr(0, eq);
    std::vector<std::string> values;
    std::string rest = sweep_spec.substr(eq + 1);
    size_t pos = 0;
    while (pos <= rest.size()) {
        size_t comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        values.push_back(rest.substr(pos, comma - pos));
        pos = comma + 1;
    }
    if (values.empty()) fail(Errc::config_invalid, "--sweep needs at least one value");

    LoadedConfig base = load_with_overrides(opt);
    install_modulus(base);
    // validate each instance up front so a bad sweep value fails with exit 2
    for (const std::string& v : values) {
        LoadedConfig cfg = base;
        apply_override(cfg, key, v);
        validate(cfg.scenario);
    }

    std::vector<ScenarioReport> reports(values.size());
    std::atomic<size_t> next{0};
    unsigned workers = std::max(1u, parallel);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= values.size()) return;
                LoadedConfig cfg = base;
                apply_override(cfg, key, values[i]);
                reports[i] = run_scenario(cfg.scenario);
            }
        });
    }
    for (auto& t : pool) t.join();

    std::ostringstream csv;
    csv << "key,value,terminal,total_gas,total_paid_wei,violations,friction\n";
    bool all_ok = true;
    for (size_t i = 0; i < values.size(); ++i) {
        const ScenarioReport& r = reports[i];
        csv << key << "," << values[i] << "," << r.terminal_status << "," << r.total_gas << ","
            << wei_to_string(r.total_paid) << "," << r.violated_expectations().size() << "," << r.friction << "\n";
        all_ok = all_ok && r.all_expectations_hold();
    }
    if (!opt.out_dir.empty()) {
        fs::create_directories(opt.out_dir);
        write_file(opt.out_dir + "/sweep.csv", csv.str());
    }
    std::cout << csv.str();
    return all_ok ? kExitOk : kExitAssertion;
}

ScenarioConfig threat_config(int threat, std::uint64_t seed) {
    ScenarioConfig c;
    c.seed = seed;
    c.participants = 8;
    c.rounds = 5;
    c.circuit.max_rounds = 5;
    c.circuit.max_participants = 8;
    c.circuit.batch_size = 4;
    c.variant = Variant::challenge;
    c.mode = Mode::multi_shot;
    switch (threat) {
        case 1:
            c.name = "threat-1-commitment-reversal";
            c.aggregator = AggBehavior::commitment_reversal;
            c.activation_round = 4;
            break;
        case 2:
            c.name = "threat-2-refusal-to-commit";
            c.aggregator = AggBehavior::refusal_to_commit;
            c.activation_round = 4;
            break;
        case 3:
            c.name = "threat-3-reward-withholding";
            c.aggregator = AggBehavior::reward_withholding;
            break;
        case 4:
            c.name = "threat-4-stale-challenge";
            c.participant_behaviors[2] = PartBehavior::stale_challenger;
            break;
    }
    return c;
}

int cmd_threats(const std::string& out_dir, std::uint64_t seed) {
    bool all_ok = true;
    for (int threat = 1; threat <= 4; ++threat) {
        ScenarioConfig cfg = threat_config(threat, seed);
        ScenarioReport report = run_scenario(cfg);
        bool ok = report.all_expectations_hold();
        all_ok = all_ok && ok;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << cfg.name << "\n";
        for (const Expectation& e : report.expectations)
            std::cout << (e.held ? "   ok:   " : "   FAIL: ") << e.description << "\n";
        if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            MoneyRates rates{cfg.ledger.gas_price_wei, cfg.ledger.eth_usd};
            write_file(out_dir + "/" + cfg.name + ".json", report_to_json(report, rates));
        }
    }
    return all_ok ? kExitOk : kExitAssertion;
}

int cmd_circuits(size_t max_participants, size_t max_rounds, size_t batch, const std::string& out_dir) {
    Sponge sponge;
    CircuitParams big;
    big.max_participants = max_participants;
    big.max_rounds = max_rounds;
    big.batch_size = batch;
    CircuitParams half = big;
    half.max_rounds = std::max<size_t>(1, max_rounds / 2);

    struct Cell {
        const char* name;
        CircuitKind kind;
    };
    const Cell cells[] = {{"transition", CircuitKind::transition},
                          {"challenge", CircuitKind::challenge},
                          {"distribution", CircuitKind::distribution}};

    std::ostringstream csv;
    csv << "circuit,participants,rounds,constraints\n";
    std::map<std::string, size_t> full, halved;
    for (const Cell& cell : cells) {
        size_t c_full = Circuit::build(cell.kind, big, sponge).cs().constraint_count();
        size_t c_half = Circuit::build(cell.kind, half, sponge).cs().constraint_count();
        full[cell.name] = c_full;
        halved[cell.name] = c_half;
        csv << cell.name << "," << big.max_participants << "," << big.max_rounds << "," << c_full << "\n";
        csv << cell.name << "," << half.max_participants << "," << half.max_rounds << "," << c_half << "\n";
    }

    bool ok = true;
    auto ratio_line = [&](const std::string& label, double value, double lo, double hi) {
        bool in_band = value >= lo && value <= hi;
        ok = ok && in_band;
        std::cout << (in_band ? "  ok:   " : "  FLAG: ") << label << " = " << value << " (band " << lo << ".." << hi
                  << ")\n";
    };
    std::cout << "constraint counts at N=" << big.max_participants << ", T=" << big.max_rounds << " and T=" << half.max_rounds
              << ":\n";
    for (const Cell& cell : cells)
        std::cout << "  " << cell.name << ": " << full[cell.name] << " / " << halved[cell.name] << "\n";
    ratio_line("transition/challenge", (double)full["transition"] / (double)full["challenge"], 1.8, 2.2);
    ratio_line("distribution/challenge", (double)full["distribution"] / (double)full["challenge"], 0.85, 1.15);
    for (const Cell& cell : cells)
        ratio_line(std::string(cell.name) + " T-doubling", (double)full[cell.name] / (double)halved[cell.name], 1.8,
                   2.2);
    for (const Cell& cell : cells) {
        double slope = double(full[cell.name] - halved[cell.name]) / double(big.max_rounds - half.max_rounds);
        std::cout << "  " << cell.name << " constraints-per-round slope ~ " << slope << "\n";
    }

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file(out_dir + "/circuits.csv", csv.str());
    }
    return ok ? kExitOk : kExitAssertion;
}

int cmd_costs(size_t participants, size_t rounds, size_t batch, const std::string& gas_price, std::uint64_t eth_usd,
              const std::string& out_dir) {
    GasTable gas = default_gas_table();
    econ::Rat gwei = econ::rat_from_decimal(gas_price);
    econ::Rat wei = gwei * econ::Rat(1'000'000'000);
    if (wei.denominator() != 1) fail(Errc::config_invalid, "gas price must be a whole number of wei");
    MoneyRates rates{wei.numerator().convert_to<std::uint64_t>(), eth_usd};

    for (bool proof : {true, false}) {
        econ::CostBreakdown bd = econ::deployment_cost(proof, participants, rounds, batch, gas, !proof);
        std::cout << (proof ? "commit-proof" : "commit-challenge") << " deployment, N=" << participants
                  << " T=" << rounds << " B=" << batch << ":\n";
        for (const econ::CostRow& row : bd.rows) {
            MoneyAmount m = gas_to_money(row.gas_total, rates);
            std::cout << "  " << row.op << ": calls=" << row.calls << " gas=" << row.gas_total
                      << " mETH=" << m.meth_string() << " usd=" << m.usd_string(rates.eth_usd) << "\n";
        }
        MoneyAmount total = gas_to_money(bd.total_gas, rates);
        std::cout << "  total: gas=" << bd.total_gas << " mETH=" << total.meth_string()
                  << " usd=" << total.usd_string(rates.eth_usd) << "\n";
    }

    std::ostringstream csv;
    csv << "participants,rounds,commit_challenge_gas,commit_proof_gas,state_channel_gas,active_gas\n";
    const size_t grid_n[] = {10, 25, 50, 100, 200, 400, 800};
    const size_t grid_t[] = {10, 25, 50, 100, 150, 200};
    for (size_t n : grid_n) {
        for (size_t t : grid_t) {
            csv << n << "," << t << "," << econ::baseline_total_gas(econ::CostModel::commit_challenge, n, t, batch, gas)
                << "," << econ::baseline_total_gas(econ::CostModel::commit_proof, n, t, batch, gas) << ","
                << econ::baseline_total_gas(econ::CostModel::state_channel, n, t, batch, gas) << ","
                << econ::baseline_total_gas(econ::CostModel::active_onchain, n, t, batch, gas) << "\n";
        }
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file(out_dir + "/costs.csv", csv.str());
    }
    std::cout << csv.str();
    return kExitOk;
}

int cmd_nash(bool sweep, size_t participants) {
    econ::GameParameters p; // defaults are the worked example
    econ::StrategyProfile honest = econ::StrategyProfile::all_honest(participants);
    std::cout << "utilities (all-honest baseline):\n";
    std::cout << "  aggregator: honest=" << econ::rat_to_string(econ::aggregator_utility(honest, p));
    for (econ::AggStrategy s : {econ::AggStrategy::tamper, econ::AggStrategy::abort_task}) {
        econ::StrategyProfile dev = honest;
        dev.aggregator = s;
        std::cout << " " << econ::strategy_name(s) << "=" << econ::rat_to_string(econ::aggregator_utility(dev, p));
    }
    std::cout << "\n  participant: honest=" << econ::rat_to_string(econ::participant_utility(honest, 0, p));
    for (econ::PartStrategy s : {econ::PartStrategy::malicious, econ::PartStrategy::passive}) {
        econ::StrategyProfile dev = honest;
        dev.participants[0] = s;
        std::cout << " " << econ::strategy_name(s) << "=" << econ::rat_to_string(econ::participant_utility(dev, 0, p));
    }
    std::cout << "\n";

    econ::NashReport report = econ::check_nash(p, participants);
    std::cout << "equilibrium (strict): " << (report.equilibrium ? "yes" : "no") << "\n";
    std::cout << "equilibrium (weak):   " << (report.weak_equilibrium ? "yes" : "no") << "\n";
    std::cout << "slash > gas condition: " << (report.slash_exceeds_gas ? "holds" : "fails") << "\n";
    for (const econ::Deviation& d : report.non_strict)
        std::cout << "  profitable-or-tying deviation: " << d.player << " -> " << d.strategy << " ("
                  << econ::rat_to_string(d.utility) << " vs " << econ::rat_to_string(d.honest_utility) << ")\n";

    if (sweep) {
        std::cout << "p_slash_agg sweep (c_gas = " << econ::rat_to_string(p.gas_cost) << "):\n";
        econ::Rat step(1, 4);
        for (econ::Rat v = p.gas_cost - econ::Rat(1); v <= p.gas_cost + econ::Rat(1); v += step) {
            if (v < econ::Rat(0)) continue;
            econ::GameParameters q = p;
            q.agg_slash = v;
            econ::NashReport r = econ::check_nash(q, participants);
            std::cout << "  p_slash_agg=" << econ::rat_to_string(v) << " equilibrium=" << (r.equilibrium ? "yes" : "no")
                      << "\n";
        }
        std::cout << "boundary: equilibrium iff p_slash_agg > c_gas\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale reward settlement workbench: scenarios, circuits, costs, incentives"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "run one scenario from a config file");
    run->add_option("--config", run_opt.config_path, "scenario config file")->required();
    run->add_option("--out", run_opt.out_dir, "output directory for report.json/gas.csv/replay.txt");
    run->add_option("--seed", run_opt.seed, "seed override");
    run->add_option("--set", run_opt.overrides, "override section.key=value (repeatable)");

    RunOptions sweep_opt;
    std::string sweep_spec;
    unsigned parallel = std::max(1u, std::thread::hardware_concurrency());
    auto* sweep = app.add_subcommand("sweep", "run a scenario across a list of parameter values");
    sweep->add_option("--config", sweep_opt.config_path, "base scenario config")->required();
    sweep->add_option("--sweep", sweep_spec, "section.key=v1,v2,... values to sweep")->required();
    sweep->add_option("--out", sweep_opt.out_dir, "output directory for sweep.csv");
    sweep->add_option("--set", sweep_opt.overrides, "base overrides");
    sweep->add_option("--parallel", parallel, "worker threads");

    std::string threats_out;
    std::int64_t threats_seed = 7;
    auto* threats = app.add_subcommand("threats", "run the four adversarial regression scenarios");
    threats->add_option("--out", threats_out, "output directory for per-threat reports");
    threats->add_option("--seed", threats_seed, "seed");

    size_t cir_n = 64, cir_t = 32, cir_b = 8;
    std::string circuits_out;
    auto* circuits = app.add_subcommand("circuits", "constraint counts and scaling ratios");
    circuits->add_option("--max-participants", cir_n, "N");
    circuits->add_option("--max-rounds", cir_t, "T");
    circuits->add_option("--batch", cir_b, "B");
    circuits->add_option("--out", circuits_out, "output directory for circuits.csv");

    size_t cost_n = 800, cost_t = 50, cost_b = 50;
    std::string cost_price = "0.075", costs_out;
    std::uint64_t cost_usd = 1950;
    auto* costs = app.add_subcommand("costs", "deployment cost table and baseline crossover grid");
    costs->add_option("--participants", cost_n, "N");
    costs->add_option("--rounds", cost_t, "T");
    costs->add_option("--batch", cost_b, "B");
    costs->add_option("--gas-price", cost_price, "gwei per gas");
    costs->add_option("--eth-usd", cost_usd, "USD per ETH");
    costs->add_option("--out", costs_out, "output directory for costs.csv");

    bool nash_sweep = false;
    size_t nash_n = 1;
    auto* nash = app.add_subcommand("nash", "incentive game utilities and equilibrium check");
    nash->add_flag("--sweep", nash_sweep, "map the slash/gas boundary");
    nash->add_option("--participants", nash_n, "participant count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run) return cmd_run(run_opt);
        if (*sweep) return cmd_sweep(sweep_opt, sweep_spec, parallel);
        if (*threats) return cmd_threats(threats_out, (std::uint64_t)threats_seed);
        if (*circuits) return cmd_circuits(cir_n, cir_t, cir_b, circuits_out);
        if (*costs) return cmd_costs(cost_n, cost_t, cost_b, cost_price, cost_usd, costs_out);
        if (*nash) return cmd_nash(nash_sweep, nash_n);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
