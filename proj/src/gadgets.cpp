#include "settle/gadgets.hpp"

#include "settle/errors.hpp"

namespace settle::gadgets {

std::vector<Fe> lpi_eval(std::uint64_t x, size_t length) {
    if (x > length)
        fail(Errc::out_of_range, "prefix length " + std::to_string(x) + " exceeds vector length " + std::to_string(length));
    std::vector<Fe> bits(length);
    for (size_t i = 0; i < length; ++i) bits[i] = i < x ? Fe::one() : Fe();
    return bits;
}

Lpi lpi(Builder& b, const LinComb& x, size_t length) {
    std::uint64_t xv = b.value(x).as_u64();
    std::vector<Fe> vals = lpi_eval(xv, length);

    Lpi out;
    LinComb sum;
    for (size_t i = 0; i < length; ++i) {
        VarId y = b.alloc(vals[i]);
        b.enforce(y, LinComb(y) - LinComb::constant(Fe::one()), LinComb::zero()); // booleanity
        sum += LinComb(y);
        out.bits.push_back(y);
    }
    b.assert_eq(sum, x); // sum equals the integer

    // Transition indicators over the extended sequence (1, y_0..y_{L-1}, 0);
    // pinning each to {0,1} forbids any 0 -> 1 step, so y is a prefix vector.
    LinComb csum;
    for (size_t i = 0; i <= length; ++i) {
        LinComb c;
        if (i == 0)
            c = Fe::one() - LinComb(out.bits[0]);
        else if (i == length)
            c = LinComb(out.bits[length - 1]);
        else
            c = LinComb(out.bits[i - 1]) - LinComb(out.bits[i]);
        b.enforce(c, c - LinComb::constant(Fe::one()), LinComb::zero());
        csum += c;
        out.transitions.push_back(std::move(c));
    }
    b.assert_eq(csum, LinComb::constant(Fe::one())); // exactly one 1 -> 0 transition
    return out;
}

Fe is_zero_eval(const Fe& x) { return x.is_zero() ? Fe::one() : Fe(); }

IsZeroBit is_zero(Builder& b, const LinComb& x) {
    Fe xv = b.value(x);
    VarId inv = b.alloc(xv.is_zero() ? Fe() : xv.inverse());
    VarId flag = b.alloc(is_zero_eval(xv));
    b.enforce(x, inv, Fe::one() - LinComb(flag)); // x * inv = 1 - y
    b.enforce(x, flag, LinComb::zero());          // x * y = 0
    if (xv.is_zero()) b.mark_free(inv);
    return {flag, inv};
}

namespace {

/// x^e by square-and-multiply over fresh product variables.
LinComb sbox(Builder& b, const LinComb& x) {
    unsigned e = b.sponge().config().sbox_exponent;
    int top = 31;
    while (!((e >> top) & 1u)) --top;
    LinComb acc = x;
    for (int i = top - 1; i >= 0; --i) {
        acc = LinComb(b.mul(acc, acc));
        if ((e >> i) & 1u) acc = LinComb(b.mul(acc, x));
    }
    return acc;
}

} // namespace

LinComb sponge_hash(Builder& b, std::span<const LinComb> inputs) {
    const Sponge& sp = b.sponge();
    if (inputs.empty()) fail(Errc::empty_input, "sponge gadget input is empty");
    if (inputs.size() > sp.config().max_arity)
        fail(Errc::arity_exceeded, "sponge gadget arity exceeds max");

    unsigned w = Sponge::width_for_arity((unsigned)inputs.size());
    std::vector<LinComb> state(w);
    state[0] = LinComb::constant(fe(inputs.size()));
    for (size_t i = 0; i < inputs.size(); ++i) state[i + 1] = inputs[i];

    for (unsigned r = 0; r < sp.config().rounds; ++r) {
        std::vector<LinComb> boxed(w);
        for (unsigned i = 0; i < w; ++i) boxed[i] = sbox(b, state[i] + sp.round_constant(w, r, i));
        const auto& m = sp.mds(w);
        for (unsigned i = 0; i < w; ++i) {
            LinComb mixed;
            for (unsigned j = 0; j < w; ++j) mixed += boxed[j] * m[i][j];
            state[i] = std::move(mixed);
        }
    }
    return state[0];
}

Fe modular_hash_eval(const Sponge& sponge, std::span<const Fe> xs, const Fe& seed) {
    if (xs.empty()) fail(Errc::empty_input, "modular hash input is empty");
    size_t chunk = sponge.config().max_arity - 1;
    Fe y = seed;
    for (size_t off = 0; off < xs.size(); off += chunk) {
        size_t m = std::min(chunk, xs.size() - off);
        std::vector<Fe> call(m + 1);
        call[0] = y;
        for (size_t j = 0; j < m; ++j) call[j + 1] = xs[off + j];
        y = sponge.hash(call);
    }
    return y;
}

LinComb modular_hash(Builder& b, std::span<const LinComb> xs, const LinComb& seed) {
    if (xs.empty()) fail(Errc::empty_input, "modular hash input is empty");
    size_t chunk = b.sponge().config().max_arity - 1;
    LinComb y = seed;
    for (size_t off = 0; off < xs.size(); off += chunk) {
        size_t m = std::min(chunk, xs.size() - off);
        std::vector<LinComb> call(m + 1);
        call[0] = y;
        for (size_t j = 0; j < m; ++j) call[j + 1] = xs[off + j];
        y = sponge_hash(b, call);
    }
    return y;
}

std::vector<Fe> batch_extract_eval(std::span<const Fe> xs, std::uint64_t a, size_t batch) {
    size_t groups = (xs.size() + batch - 1) / batch;
    if (a >= groups) fail(Errc::batch_index_out_of_range, "batch index " + std::to_string(a) + " out of range");
    std::vector<Fe> out(batch);
    for (size_t j = 0; j < batch; ++j) {
        size_t k = a * batch + j;
        out[j] = k < xs.size() ? xs[k] : Fe();
    }
    return out;
}

std::vector<LinComb> batch_extract(Builder& b, std::span<const LinComb> xs, const LinComb& a, size_t batch) {
    size_t n = xs.size();
    size_t groups = (n + batch - 1) / batch;

    std::vector<LinComb> select(groups);
    for (size_t i = 0; i < groups; ++i) select[i] = LinComb(is_zero(b, a - LinComb::constant(fe(i))).flag);

    std::vector<LinComb> out(batch);
    for (size_t k = 0; k < groups * batch; ++k) {
        size_t i = k / batch, j = k % batch;
        if (k < n) out[j] += LinComb(b.mul(xs[k], select[i]));
        // otherwise the padded cell is the constant 0
    }
    return out;
}

std::vector<Fe> sum_row_eval(const MatVal& v, std::span<const Fe> r) {
    std::vector<Fe> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Fe acc;
        for (size_t t = 0; t < r.size(); ++t) acc += v[i][t] * r[t];
        out[i] = acc;
    }
    return out;
}

std::vector<LinComb> sum_row(Builder& b, const Mat& v, std::span<const LinComb> r) {
    std::vector<LinComb> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        LinComb acc;
        for (size_t t = 0; t < r.size(); ++t) acc += LinComb(b.mul(v[i][t], r[t]));
        out[i] = std::move(acc);
    }
    return out;
}

void mask_check(Builder& b, const Mat& v, std::span<const LinComb> r) {
    for (const auto& row : v)
        for (size_t t = 0; t < r.size(); ++t)
            b.enforce(row[t], Fe::one() - r[t], LinComb::zero());
}

bool mask_check_eval(const MatVal& v, std::span<const Fe> r) {
    for (const auto& row : v)
        for (size_t t = 0; t < r.size(); ++t)
            if (!(row[t] * (Fe::one() - r[t])).is_zero()) return false;
    return true;
}

LinComb pk_digest_gadget(Builder& b, const LinComb& ax, const LinComb& ay) {
    LinComb in[2] = {ax, ay};
    return sponge_hash(b, in);
}

Fe commitment_eval(const Sponge& sponge, const MatVal& v, std::span<const Fe> roster, const Fe& rho) {
    std::vector<Fe> flat = vec_row_major(v);
    return sponge.hash3(modular_hash_eval(sponge, flat, Fe()), modular_hash_eval(sponge, roster, Fe()), rho);
}

CommitmentWires verify_commitment(Builder& b, const Mat& v, std::span<const LinComb> roster, const LinComb& rho,
                                  const LinComb& ax, const LinComb& ay, const LinComb& sk,
                                  std::optional<std::pair<Fe, Fe>> sigma) {
    std::vector<LinComb> flat = vec_row_major(v);
    LinComb hv = modular_hash(b, flat, LinComb::zero());
    LinComb hp = modular_hash(b, roster, LinComb::zero());
    LinComb c3[3] = {hv, hp, rho};
    LinComb c = sponge_hash(b, c3);

    const Sponge& sp = b.sponge();
    Fe sk_val = b.value(sk);
    Fe c_val = b.value(c);
    Fe s1v = sigma ? sigma->first : sp.hash3(sk_val, c_val, fe(1));
    Fe s2v = sigma ? sigma->second : sp.hash3(sk_val, c_val, fe(2));
    VarId s1 = b.alloc(s1v);
    VarId s2 = b.alloc(s2v);

    // Attribution: the key witness must reproduce both the public key and the
    // signature tuple over this commitment.
    LinComb pk1[2] = {sk, LinComb::constant(fe(1))};
    LinComb pk2[2] = {sk, LinComb::constant(fe(2))};
    b.assert_eq(sponge_hash(b, pk1), ax);
    b.assert_eq(sponge_hash(b, pk2), ay);
    LinComb sg1[3] = {sk, c, LinComb::constant(fe(1))};
    LinComb sg2[3] = {sk, c, LinComb::constant(fe(2))};
    b.assert_eq(sponge_hash(b, sg1), LinComb(s1));
    b.assert_eq(sponge_hash(b, sg2), LinComb(s2));

    return {std::move(c), s1, s2};
}

} // namespace settle::gadgets
