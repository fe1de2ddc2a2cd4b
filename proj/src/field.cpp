#include "settle/field.hpp"

#include <memory>

#include "settle/errors.hpp"

namespace settle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

const char* const kBn254ScalarModulusDecimal =
    "21888242871839275222246405745257275088548364400416034343698204186575808495617";

Field::Field(const U256& modulus) : p_(modulus) {
    if (p_.is_zero() || !(p_.limb[0] & 1) || cmp(p_, U256(3)) <= 0)
        fail(Errc::config_invalid, "field modulus must be an odd prime > 3");

    // n0 = -p^{-1} mod 2^64, by Newton iteration on the low limb.
    u64 inv = p_.limb[0];
    for (int i = 0; i < 6; ++i) inv *= 2 - p_.limb[0] * inv;
    n0_ = ~inv + 1;

    // R mod p by 256 modular doublings of 1, then R^2 mod p by 256 more.
    U256 acc(1);
    auto double_mod = [&](U256& x) {
        U256 t = x;
        u64 carry = add_carry(t, x);
        if (carry || t >= p_) sub_borrow(t, p_);
        x = t;
    };
    for (int i = 0; i < 256; ++i) double_mod(acc);
    r_mod_p_ = acc;
    for (int i = 0; i < 256; ++i) double_mod(acc);
    r2_mod_p_ = acc;
}

U256 Field::add(const U256& a, const U256& b) const {
    U256 t = a;
    u64 carry = add_carry(t, b);
    if (carry || t >= p_) sub_borrow(t, p_);
    return t;
}

U256 Field::sub(const U256& a, const U256& b) const {
    U256 t = a;
    if (sub_borrow(t, b)) add_carry(t, p_);
    return t;
}

U256 Field::neg(const U256& a) const {
    if (a.is_zero()) return a;
    U256 t = p_;
    sub_borrow(t, a);
    return t;
}

U256 Field::mul(const U256& a, const U256& b) const {
    // Schoolbook 4x4 product, then word-by-word Montgomery reduction.
    u64 t[8] = {0};
    for (int i = 0; i < 4; ++i) {
        u64 carry = 0;
        for (int j = 0; j < 4; ++j) {
            u128 s = (u128)a.limb[i] * b.limb[j] + t[i + j] + carry;
            t[i + j] = (u64)s;
            carry = (u64)(s >> 64);
        }
        t[i + 4] = carry;
    }
    u64 extra = 0;
    for (int i = 0; i < 4; ++i) {
        u64 m = t[i] * n0_;
        u64 carry = 0;
        for (int j = 0; j < 4; ++j) {
            u128 s = (u128)m * p_.limb[j] + t[i + j] + carry;
            t[i + j] = (u64)s;
            carry = (u64)(s >> 64);
        }
        for (int k = i + 4; k < 8 && carry; ++k) {
            u128 s = (u128)t[k] + carry;
            t[k] = (u64)s;
            carry = (u64)(s >> 64);
        }
        extra += carry;
    }
    U256 r(t[4], t[5], t[6], t[7]);
    if (extra || r >= p_) sub_borrow(r, p_);
    return r;
}

U256 Field::to_mont(const U256& canonical) const { return mul(canonical, r2_mod_p_); }

U256 Field::from_mont(const U256& mont) const { return mul(mont, U256(1)); }

U256 Field::reduce_to_mont(const U256& any) const {
    // REDC correctness only needs the operand below 2^256, so this reduces
    // arbitrary limb values.
    return mul(any, r2_mod_p_);
}

U256 Field::pow(const U256& base_mont, const U256& e) const {
    U256 result = r_mod_p_;
    unsigned bits = e.bit_length();
    for (int i = (int)bits - 1; i >= 0; --i) {
        result = mul(result, result);
        if (e.bit((unsigned)i)) result = mul(result, base_mont);
    }
    return result;
}

U256 Field::inverse(const U256& mont) const {
    if (mont.is_zero()) fail(Errc::zero_inverse, "inverse of zero");
    U256 e = p_;
    sub_borrow(e, U256(2));
    return pow(mont, e);
}

namespace {

std::unique_ptr<Field>& field_slot() {
    static std::unique_ptr<Field> slot;
    return slot;
}

} // namespace

const Field& global_field() {
    auto& slot = field_slot();
    if (!slot) slot = std::make_unique<Field>(u256_from_decimal(kBn254ScalarModulusDecimal));
    return *slot;
}

void set_global_modulus(const U256& modulus) {
    field_slot() = std::make_unique<Field>(modulus);
}

Fe Fe::from_u64(u64 v) { return wrap(global_field().to_mont(U256(v))); }

Fe Fe::from_canonical(const U256& v) { return wrap(global_field().reduce_to_mont(v)); }

Fe Fe::from_decimal(std::string_view s) { return from_canonical(u256_from_decimal(s)); }

Fe Fe::random(Rng& rng) {
    const Field& f = global_field();
    unsigned bits = f.modulus().bit_length();
    for (;;) {
        U256 v;
        for (auto& l : v.limb) l = rng.next();
        // Mask to the modulus bit length so rejection is cheap.
        unsigned top = (bits + 63) / 64;
        for (unsigned i = top; i < 4; ++i) v.limb[i] = 0;
        if (bits % 64) v.limb[top - 1] &= (~0ULL >> (64 - bits % 64));
        if (v < f.modulus()) return wrap(f.to_mont(v));
    }
}

u64 Fe::as_u64() const {
    U256 c = canonical();
    if (c.limb[1] || c.limb[2] || c.limb[3]) fail(Errc::out_of_range, "field element does not fit in u64");
    return c.limb[0];
}

} // namespace settle
