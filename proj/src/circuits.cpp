#include "settle/circuits.hpp"

#include <sstream>

#include "settle/errors.hpp"

namespace settle {

using gadgets::Mat;
using gadgets::MatVal;

const char* circuit_kind_name(CircuitKind kind) {
    switch (kind) {
        case CircuitKind::transition: return "transition";
        case CircuitKind::challenge: return "challenge";
        case CircuitKind::distribution: return "distribution";
    }
    return "?";
}

Fe circuit_shape_digest(CircuitKind kind, const CircuitParams& params, const Sponge& sponge) {
    const HashConfig& h = params.hash;
    Fe in[8] = {fe((std::uint64_t)kind + 1), fe(params.max_rounds),    fe(params.max_participants),
                fe(params.batch_size),       fe(h.max_arity),          fe(h.rounds),
                fe(h.sbox_exponent),         Fe::from_canonical(U256(h.constant_seed))};
    return sponge.hash(in);
}

namespace {

/// Value superset feeding any of the three programs. Shape builds use the
/// defaults; proofs fill in real data.
struct ProgramValues {
    std::uint64_t round = 0;
    std::uint64_t batch = 0;
    std::uint64_t p1_count = 0;
    MatVal v; // N x T
    std::vector<Fe> roster;
    Fe rho, ax, ay, sk;
    std::optional<std::pair<Fe, Fe>> sigma; // captured tuple for the main commitment
};

struct BuiltProgram {
    Witness witness;
    std::vector<std::uint32_t> free_vars;
    std::uint32_t salt_var = 0;
};

Mat alloc_matrix(Builder& b, const MatVal& vals) {
    Mat m(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) {
        m[i].reserve(vals[i].size());
        for (const Fe& f : vals[i]) m[i].push_back(LinComb(b.alloc(f)));
    }
    return m;
}

std::vector<LinComb> alloc_vector(Builder& b, const std::vector<Fe>& vals) {
    std::vector<LinComb> out;
    out.reserve(vals.size());
    for (const Fe& f : vals) out.push_back(LinComb(b.alloc(f)));
    return out;
}

std::vector<LinComb> to_lincombs(const std::vector<VarId>& vars) {
    std::vector<LinComb> out;
    out.reserve(vars.size());
    for (VarId v : vars) out.push_back(LinComb(v));
    return out;
}

BuiltProgram run_program(CircuitKind kind, const CircuitParams& params, const Sponge& sponge, ConstraintSystem& cs,
                         const ProgramValues& in) {
    const size_t n = params.max_participants;
    const size_t t = params.max_rounds;
    Builder b(cs, sponge);

    // Public inputs first, in the layout order.
    VarId round_pub = b.alloc(fe(in.round), Vis::public_input);
    VarId batch_pub{};
    if (kind == CircuitKind::distribution) batch_pub = b.alloc(fe(in.batch), Vis::public_input);

    // Private inputs.
    Mat v = alloc_matrix(b, in.v);
    std::vector<LinComb> roster = alloc_vector(b, in.roster);
    VarId rho = b.alloc(in.rho);
    VarId ax = b.alloc(in.ax);
    VarId ay = b.alloc(in.ay);
    VarId sk = b.alloc(in.sk);

    LinComb h_agg = gadgets::pk_digest_gadget(b, LinComb(ax), LinComb(ay));

    BuiltProgram out;
    out.salt_var = rho.index;

    switch (kind) {
        case CircuitKind::transition: {
            VarId p1_count = b.alloc(fe(in.p1_count));

            gadgets::Lpi r2 = gadgets::lpi(b, LinComb(round_pub) + Fe::one(), t);
            gadgets::mask_check(b, v, to_lincombs(r2.bits)); // V2 confined to round+1 columns

            // Round-`round` slice and its roster prefix, derived in-circuit.
            gadgets::Lpi r1 = gadgets::lpi(b, LinComb(round_pub), t);
            Mat v1(n);
            for (size_t i = 0; i < n; ++i) {
                v1[i].reserve(t);
                for (size_t tt = 0; tt < t; ++tt) v1[i].push_back(LinComb(b.mul(v[i][tt], LinComb(r1.bits[tt]))));
            }
            gadgets::Lpi rp = gadgets::lpi(b, LinComb(p1_count), n);
            std::vector<LinComb> p1(n);
            for (size_t i = 0; i < n; ++i) p1[i] = LinComb(b.mul(roster[i], LinComb(rp.bits[i])));

            // Earlier commitment's signature is always recomputed from the key
            // (the transition prover is the signer); the later one may be a
            // captured tuple.
            auto c1 = gadgets::verify_commitment(b, v1, p1, LinComb(rho), LinComb(ax), LinComb(ay), LinComb(sk));
            auto c2 =
                gadgets::verify_commitment(b, v, roster, LinComb(rho), LinComb(ax), LinComb(ay), LinComb(sk), in.sigma);

            VarId c1_pub = b.alloc(b.value(c1.c), Vis::public_input);
            VarId c2_pub = b.alloc(b.value(c2.c), Vis::public_input);
            VarId ha_pub = b.alloc(b.value(h_agg), Vis::public_input);
            b.assert_eq(c1.c, LinComb(c1_pub));
            b.assert_eq(c2.c, LinComb(c2_pub));
            b.assert_eq(h_agg, LinComb(ha_pub));
            break;
        }
        case CircuitKind::challenge: {
            gadgets::Lpi r = gadgets::lpi(b, LinComb(round_pub), t);
            gadgets::mask_check(b, v, to_lincombs(r.bits));

            auto c = gadgets::verify_commitment(b, v, roster, LinComb(rho), LinComb(ax), LinComb(ay), LinComb(sk), in.sigma);

            VarId c_pub = b.alloc(b.value(c.c), Vis::public_input);
            VarId ha_pub = b.alloc(b.value(h_agg), Vis::public_input);
            b.assert_eq(c.c, LinComb(c_pub));
            b.assert_eq(h_agg, LinComb(ha_pub));
            break;
        }
        case CircuitKind::distribution: {
            gadgets::Lpi r = gadgets::lpi(b, LinComb(round_pub), t);
            gadgets::mask_check(b, v, to_lincombs(r.bits));

            std::vector<LinComb> sums = gadgets::sum_row(b, v, to_lincombs(r.bits));
            std::vector<LinComb> p_batch = gadgets::batch_extract(b, roster, LinComb(batch_pub), params.batch_size);
            std::vector<LinComb> s_batch = gadgets::batch_extract(b, sums, LinComb(batch_pub), params.batch_size);

            auto c = gadgets::verify_commitment(b, v, roster, LinComb(rho), LinComb(ax), LinComb(ay), LinComb(sk), in.sigma);

            VarId c_pub = b.alloc(b.value(c.c), Vis::public_input);
            VarId ha_pub = b.alloc(b.value(h_agg), Vis::public_input);
            b.assert_eq(c.c, LinComb(c_pub));
            b.assert_eq(h_agg, LinComb(ha_pub));
            for (const LinComb& s : s_batch) {
                VarId s_pub = b.alloc(b.value(s), Vis::public_input);
                b.assert_eq(s, LinComb(s_pub));
            }
            for (const LinComb& p : p_batch) {
                VarId p_pub = b.alloc(b.value(p), Vis::public_input);
                b.assert_eq(p, LinComb(p_pub));
            }
            break;
        }
    }

    out.free_vars = b.free_vars();
    out.witness = b.take_witness();
    return out;
}

ProgramValues shape_defaults(const CircuitParams& params) {
    ProgramValues v;
    v.v.assign(params.max_participants, std::vector<Fe>(params.max_rounds));
    v.roster.assign(params.max_participants, Fe());
    return v;
}

void check_dimensions(const CircuitParams& params, const MatVal& v, const std::vector<Fe>& roster) {
    if (v.size() != params.max_participants)
        fail(Errc::shape_mismatch, "matrix has " + std::to_string(v.size()) + " rows, circuit expects " +
                                       std::to_string(params.max_participants));
    for (const auto& row : v)
        if (row.size() != params.max_rounds) fail(Errc::shape_mismatch, "matrix row width does not match circuit");
    if (roster.size() != params.max_participants) fail(Errc::shape_mismatch, "roster length does not match circuit");
}

SatisfiedInstance finish_instance(const Circuit& circuit, BuiltProgram&& built) {
    SatisfiedInstance inst;
    inst.kind = circuit.kind();
    inst.shape_digest = circuit.shape_digest();
    inst.free_vars = std::move(built.free_vars);
    inst.witness = std::move(built.witness);
    for (std::uint32_t idx : circuit.cs().public_vars()) inst.public_inputs.push_back(inst.witness.value(idx));

    auto res = circuit.cs().check(inst.witness);
    if (!res.satisfied)
        fail(Errc::witness_generation_failed, std::string("inputs cannot satisfy the ") +
                                                  circuit_kind_name(circuit.kind()) + " circuit (constraint " +
                                                  std::to_string(res.first_violation) + ")");
    return inst;
}

SatisfiedInstance prove(const Circuit& circuit, const Sponge& sponge, const ProgramValues& vals) {
    ConstraintSystem cs;
    BuiltProgram built = run_program(circuit.kind(), circuit.params(), sponge, cs, vals);
    return finish_instance(circuit, std::move(built));
}

} // namespace

Circuit Circuit::build(CircuitKind kind, const CircuitParams& params, const Sponge& sponge) {
    if (params.max_rounds == 0 || params.max_participants == 0 || params.batch_size == 0)
        fail(Errc::config_invalid, "circuit dimensions must be positive");
    if (sponge.config() != params.hash) fail(Errc::config_invalid, "sponge config does not match circuit params");
    Circuit c;
    c.kind_ = kind;
    c.params_ = params;
    BuiltProgram built = run_program(kind, params, sponge, c.cs_, shape_defaults(params));
    c.salt_var_ = built.salt_var;
    c.cs_.seal();
    c.shape_digest_ = circuit_shape_digest(kind, params, sponge);
    return c;
}

std::vector<Fe> DistributionPublics::to_vector() const {
    std::vector<Fe> out = {round, batch, c, h_agg};
    out.insert(out.end(), rewards.begin(), rewards.end());
    out.insert(out.end(), participants.begin(), participants.end());
    return out;
}

DistributionPublics DistributionPublics::from_span(std::span<const Fe> publics, size_t batch_size) {
    if (publics.size() != 4 + 2 * batch_size) fail(Errc::shape_mismatch, "distribution public input count mismatch");
    DistributionPublics p;
    p.round = publics[0];
    p.batch = publics[1];
    p.c = publics[2];
    p.h_agg = publics[3];
    p.rewards.assign(publics.begin() + 4, publics.begin() + 4 + batch_size);
    p.participants.assign(publics.begin() + 4 + batch_size, publics.end());
    return p;
}

SatisfiedInstance prove_transition(const Circuit& circuit, const Sponge& sponge, const TransitionInputs& in) {
    if (circuit.kind() != CircuitKind::transition) fail(Errc::shape_mismatch, "not a transition circuit");
    check_dimensions(circuit.params(), in.v2, in.p2);
    if (in.round + 1 > circuit.params().max_rounds)
        fail(Errc::out_of_range, "transition round exceeds circuit rounds");
    ProgramValues vals;
    vals.round = in.round;
    vals.p1_count = in.p1_count;
    vals.v = in.v2;
    vals.roster = in.p2;
    vals.rho = in.rho;
    vals.ax = in.key.pk.x;
    vals.ay = in.key.pk.y;
    vals.sk = in.key.sk;
    return prove(circuit, sponge, vals);
}

SatisfiedInstance prove_challenge(const Circuit& circuit, const Sponge& sponge, const ChallengeInputs& in) {
    if (circuit.kind() != CircuitKind::challenge) fail(Errc::shape_mismatch, "not a challenge circuit");
    check_dimensions(circuit.params(), in.v, in.p);
    ProgramValues vals;
    vals.round = in.round;
    vals.v = in.v;
    vals.roster = in.p;
    vals.rho = in.rho;
    vals.ax = in.pk.x;
    vals.ay = in.pk.y;
    vals.sk = in.sig.opening;
    vals.sigma = std::make_pair(in.sig.s1, in.sig.s2);
    return prove(circuit, sponge, vals);
}

SatisfiedInstance prove_distribution(const Circuit& circuit, const Sponge& sponge, const DistributionInputs& in) {
    if (circuit.kind() != CircuitKind::distribution) fail(Errc::shape_mismatch, "not a distribution circuit");
    check_dimensions(circuit.params(), in.v, in.p);
    size_t groups = (circuit.params().max_participants + circuit.params().batch_size - 1) / circuit.params().batch_size;
    if (in.batch >= groups)
        fail(Errc::batch_index_out_of_range,
             "batch " + std::to_string(in.batch) + " out of range (" + std::to_string(groups) + " groups)");
    ProgramValues vals;
    vals.round = in.round;
    vals.batch = in.batch;
    vals.v = in.v;
    vals.roster = in.p;
    vals.rho = in.rho;
    vals.ax = in.pk.x;
    vals.ay = in.pk.y;
    vals.sk = in.sig.opening;
    vals.sigma = std::make_pair(in.sig.s1, in.sig.s2);
    return prove(circuit, sponge, vals);
}

bool verify_instance(const Circuit& circuit, const SatisfiedInstance& instance, std::span<const Fe> expected_publics) {
    if (instance.shape_digest != circuit.shape_digest())
        fail(Errc::shape_mismatch, "instance was built for a different circuit shape");
    if (instance.witness.size() != circuit.cs().variable_count())
        fail(Errc::shape_mismatch, "instance witness size does not match circuit");
    const auto& pub_vars = circuit.cs().public_vars();
    if (instance.public_inputs.size() != pub_vars.size()) return false;
    if (expected_publics.size() != pub_vars.size()) return false;
    for (size_t i = 0; i < pub_vars.size(); ++i) {
        if (instance.public_inputs[i] != expected_publics[i]) return false;
        if (instance.witness.value(pub_vars[i]) != instance.public_inputs[i]) return false;
    }
    return circuit.cs().check(instance.witness).satisfied;
}

std::string instance_to_text(const SatisfiedInstance& instance) {
    std::ostringstream os;
    os << "instance v1\n";
    os << "kind " << circuit_kind_name(instance.kind) << "\n";
    os << "digest " << instance.shape_digest.to_decimal() << "\n";
    os << "publics " << instance.public_inputs.size() << "\n";
    for (const Fe& f : instance.public_inputs) os << f.to_decimal() << "\n";
    os << "witness " << instance.witness.size() << "\n";
    for (const Fe& f : instance.witness.values()) os << f.to_decimal() << "\n";
    os << "free " << instance.free_vars.size() << "\n";
    for (std::uint32_t v : instance.free_vars) os << v << "\n";
    return os.str();
}

SatisfiedInstance instance_from_text(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string word;
    auto expect = [&](const char* tag) {
        if (!(is >> word) || word != tag) fail(Errc::parse_error, std::string("instance envelope: expected ") + tag);
    };
    expect("instance");
    expect("v1");
    expect("kind");
    is >> word;
    SatisfiedInstance inst;
    if (word == "transition")
        inst.kind = CircuitKind::transition;
    else if (word == "challenge")
        inst.kind = CircuitKind::challenge;
    else if (word == "distribution")
        inst.kind = CircuitKind::distribution;
    else
        fail(Errc::parse_error, "instance envelope: unknown circuit kind " + word);
    expect("digest");
    is >> word;
    inst.shape_digest = Fe::from_decimal(word);
    expect("publics");
    size_t n = 0;
    is >> n;
    for (size_t i = 0; i < n; ++i) {
        if (!(is >> word)) fail(Errc::parse_error, "instance envelope: truncated publics");
        inst.public_inputs.push_back(Fe::from_decimal(word));
    }
    expect("witness");
    is >> n;
    std::vector<Fe> values;
    values.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(is >> word)) fail(Errc::parse_error, "instance envelope: truncated witness");
        values.push_back(Fe::from_decimal(word));
    }
    inst.witness = Witness(std::move(values));
    expect("free");
    is >> n;
    for (size_t i = 0; i < n; ++i) {
        std::uint32_t v = 0;
        if (!(is >> v)) fail(Errc::parse_error, "instance envelope: truncated free list");
        inst.free_vars.push_back(v);
    }
    return inst;
}

} // namespace settle
