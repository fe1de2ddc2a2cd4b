#include "settle/economics.hpp"

#include "settle/errors.hpp"

namespace settle::econ {

Rat rat_from_decimal(std::string_view s) {
    if (s.empty()) fail(Errc::parse_error, "empty rational");
    bool negative = false;
    size_t i = 0;
    if (s[0] == '-') {
        negative = true;
        i = 1;
    }
    BigInt num = 0, den = 1;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '.') {
            if (seen_dot) fail(Errc::parse_error, "bad rational: " + std::string(s));
            seen_dot = true;
            continue;
        }
        if (ch == '/') {
            // allow explicit fraction syntax a/b
            BigInt d(std::string(s.substr(i + 1)));
            if (d == 0) fail(Errc::parse_error, "zero denominator: " + std::string(s));
            if (seen_dot) fail(Errc::parse_error, "mixed fraction syntax: " + std::string(s));
            return Rat(negative ? -num : num, d);
        }
        if (ch < '0' || ch > '9') fail(Errc::parse_error, "bad rational: " + std::string(s));
        num = num * 10 + (ch - '0');
        if (seen_dot) den *= 10;
        seen_digit = true;
    }
    if (!seen_digit) fail(Errc::parse_error, "bad rational: " + std::string(s));
    return Rat(negative ? -num : num, den);
}

std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return r.numerator().str();
    return r.numerator().str() + "/" + r.denominator().str();
}

double rat_to_double(const Rat& r) {
    return r.numerator().convert_to<double>() / r.denominator().convert_to<double>();
}

Rat friction(const FrictionInputs& in, const FrictionWeights& w) {
    return w.gas * in.gas_cost + w.delay * in.protocol_delay + w.compute * in.proving_latency;
}

VariantDecision select_variant(const StrategyCosts& c, const FrictionWeights& w) {
    Rat lhs = w.delay * c.dispute_window;
    Rat rhs = w.gas * (c.validity_gas - c.optimistic_gas) + w.compute * c.proving_time;
    Rat margin = lhs - rhs;
    return {margin > Rat(0) ? VariantChoice::validity : VariantChoice::optimistic, margin};
}

std::optional<Rat> flip_threshold(SweepParam param, const StrategyCosts& c, const FrictionWeights& w) {
    const Rat overhead = w.gas * (c.validity_gas - c.optimistic_gas) + w.compute * c.proving_time;
    const Rat waiting = w.delay * c.dispute_window;
    switch (param) {
        case SweepParam::delay_weight:
            if (c.dispute_window == Rat(0)) return std::nullopt;
            return overhead / c.dispute_window;
        case SweepParam::dispute_window:
            if (w.delay == Rat(0)) return std::nullopt;
            return overhead / w.delay;
        case SweepParam::gas_weight:
            if (c.validity_gas == c.optimistic_gas) return std::nullopt;
            return (waiting - w.compute * c.proving_time) / (c.validity_gas - c.optimistic_gas);
        case SweepParam::validity_gas:
            if (w.gas == Rat(0)) return std::nullopt;
            return c.optimistic_gas + (waiting - w.compute * c.proving_time) / w.gas;
        case SweepParam::optimistic_gas:
            if (w.gas == Rat(0)) return std::nullopt;
            return c.validity_gas - (waiting - w.compute * c.proving_time) / w.gas;
        case SweepParam::compute_weight:
            if (c.proving_time == Rat(0)) return std::nullopt;
            return (waiting - w.gas * (c.validity_gas - c.optimistic_gas)) / c.proving_time;
        case SweepParam::proving_time:
            if (w.compute == Rat(0)) return std::nullopt;
            return (waiting - w.gas * (c.validity_gas - c.optimistic_gas)) / w.compute;
    }
    return std::nullopt;
}

StrategyCosts with_param(StrategyCosts c, SweepParam param, const Rat& value) {
    switch (param) {
        case SweepParam::dispute_window: c.dispute_window = value; break;
        case SweepParam::validity_gas: c.validity_gas = value; break;
        case SweepParam::optimistic_gas: c.optimistic_gas = value; break;
        case SweepParam::proving_time: c.proving_time = value; break;
        default: break;
    }
    return c;
}

FrictionWeights with_param(FrictionWeights w, SweepParam param, const Rat& value) {
    switch (param) {
        case SweepParam::delay_weight: w.delay = value; break;
        case SweepParam::gas_weight: w.gas = value; break;
        case SweepParam::compute_weight: w.compute = value; break;
        default: break;
    }
    return w;
}

const char* strategy_name(AggStrategy s) {
    switch (s) {
        case AggStrategy::honest: return "honest";
        case AggStrategy::tamper: return "tamper";
        case AggStrategy::abort_task: return "abort";
    }
    return "?";
}

const char* strategy_name(PartStrategy s) {
    switch (s) {
        case PartStrategy::honest: return "honest";
        case PartStrategy::malicious: return "malicious";
        case PartStrategy::passive: return "passive";
    }
    return "?";
}

StrategyProfile StrategyProfile::all_honest(size_t n) {
    StrategyProfile p;
    p.participants.assign(n, PartStrategy::honest);
    return p;
}

Indicators resolve_indicators(const StrategyProfile& profile, size_t participant) {
    Indicators ind;
    ind.caught = false;
    for (PartStrategy s : profile.participants)
        if (s != PartStrategy::passive) ind.caught = true;
    if (participant < profile.participants.size()) {
        ind.challenges = profile.participants[participant] == PartStrategy::honest;
        ind.challenge_fails = profile.aggregator == AggStrategy::honest;
    }
    return ind;
}

Rat aggregator_utility(const StrategyProfile& profile, const GameParameters& p) {
    Indicators ind = resolve_indicators(profile, 0);
    Rat caught = ind.caught ? Rat(1) : Rat(0);
    switch (profile.aggregator) {
        case AggStrategy::honest: return p.model_reward + p.bonus - p.commit_cost;
        case AggStrategy::tamper: return p.model_reward - p.commit_cost - caught * p.agg_slash;
        case AggStrategy::abort_task: return -(caught * p.agg_slash);
    }
    return Rat(0);
}

Rat participant_utility(const StrategyProfile& profile, size_t i, const GameParameters& p) {
    Indicators ind = resolve_indicators(profile, i);
    switch (profile.participants[i]) {
        case PartStrategy::honest: {
            Rat chal = ind.challenges ? Rat(1) : Rat(0);
            return p.reward + chal * p.agg_slash - p.gas_cost;
        }
        case PartStrategy::malicious: {
            Rat failbit = ind.challenge_fails ? Rat(1) : Rat(0);
            return p.reward + (Rat(1) - failbit) * p.steal - failbit * p.part_slash - p.gas_cost;
        }
        case PartStrategy::passive: return p.reward;
    }
    return Rat(0);
}

NashReport check_nash(const GameParameters& p, size_t participants) {
    NashReport report;
    report.slash_exceeds_gas = p.agg_slash > p.gas_cost;

    StrategyProfile honest = StrategyProfile::all_honest(participants);
    Rat agg_honest = aggregator_utility(honest, p);

    bool strict = true, weak = true;
    auto consider = [&](const std::string& player, const std::string& strategy, const Rat& dev, const Rat& base) {
        if (dev >= base) {
            report.non_strict.push_back({player, strategy, dev, base});
            strict = false;
            if (dev > base) weak = false;
        }
    };

    for (AggStrategy s : {AggStrategy::tamper, AggStrategy::abort_task}) {
        StrategyProfile dev = honest;
        dev.aggregator = s;
        consider("aggregator", strategy_name(s), aggregator_utility(dev, p), agg_honest);
    }
    for (size_t i = 0; i < participants; ++i) {
        Rat base = participant_utility(honest, i, p);
        for (PartStrategy s : {PartStrategy::malicious, PartStrategy::passive}) {
            StrategyProfile dev = honest;
            dev.participants[i] = s;
            consider("participant " + std::to_string(i), strategy_name(s), participant_utility(dev, i, p), base);
        }
    }
    report.equilibrium = strict;
    report.weak_equilibrium = weak;
    return report;
}

CostModel cost_model_from_name(std::string_view name) {
    if (name == "commit-challenge" || name == "cc") return CostModel::commit_challenge;
    if (name == "commit-proof" || name == "cp") return CostModel::commit_proof;
    if (name == "state-channel") return CostModel::state_channel;
    if (name == "active-onchain") return CostModel::active_onchain;
    fail(Errc::unknown_model, "unknown cost model: " + std::string(name));
}

const char* cost_model_name(CostModel m) {
    switch (m) {
        case CostModel::commit_challenge: return "commit-challenge";
        case CostModel::commit_proof: return "commit-proof";
        case CostModel::state_channel: return "state-channel";
        case CostModel::active_onchain: return "active-onchain";
    }
    return "?";
}

std::uint64_t baseline_total_gas(CostModel model, size_t participants, size_t rounds, size_t batch,
                                 const GasTable& gas) {
    switch (model) {
        case CostModel::commit_challenge:
        case CostModel::commit_proof: {
            std::uint64_t commit = model == CostModel::commit_proof ? gas.commit_cp : gas.commit_cc;
            std::uint64_t batches = (participants + batch - 1) / batch;
            return gas.create + commit * rounds + gas.finalize + batches * gas.distribute_per_batch;
        }
        case CostModel::state_channel: return gas.state_channel_per_participant * participants;
        case CostModel::active_onchain: return gas.active_per_participant_round * participants * rounds;
    }
    return 0;
}

CostBreakdown deployment_cost(bool proof_variant, size_t participants, size_t rounds, size_t batch,
                              const GasTable& gas, bool include_dispute) {
    CostBreakdown out;
    std::uint64_t commit = proof_variant ? gas.commit_cp : gas.commit_cc;
    std::uint64_t batches = (participants + batch - 1) / batch;
    out.rows.push_back({"create", 1, gas.create, gas.create});
    out.rows.push_back({"commit (per call)", 1, commit, commit});
    out.rows.push_back({"commit (total)", rounds, commit, commit * rounds});
    out.rows.push_back({"finalize", 1, gas.finalize, gas.finalize});
    if (!proof_variant && include_dispute) {
        out.rows.push_back({"challenge", 1, gas.challenge_first, gas.challenge_first});
        out.rows.push_back({"counter", 1, gas.counter, gas.counter});
    }
    out.rows.push_back({"distribute (per call)", 1, gas.distribute_per_batch, gas.distribute_per_batch});
    out.rows.push_back({"distribute (total)", batches, gas.distribute_per_batch, gas.distribute_per_batch * batches});
    // per-call rows are display-only; totals come from the aggregate rows
    for (const CostRow& r : out.rows)
        if (r.op.find("per call") == std::string::npos) out.total_gas += r.gas_total;
    return out;
}

} // namespace settle::econ
