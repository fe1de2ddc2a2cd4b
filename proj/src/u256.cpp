#include "settle/u256.hpp"

#include "settle/errors.hpp"

namespace settle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

unsigned U256::bit_length() const {
    for (int i = 3; i >= 0; --i) {
        if (limb[i] != 0) {
            unsigned top = 63;
            while (!((limb[i] >> top) & 1u)) --top;
            return static_cast<unsigned>(i) * 64 + top + 1;
        }
    }
    return 0;
}

int cmp(const U256& a, const U256& b) {
    for (int i = 3; i >= 0; --i) {
        if (a.limb[i] < b.limb[i]) return -1;
        if (a.limb[i] > b.limb[i]) return 1;
    }
    return 0;
}

u64 add_carry(U256& a, const U256& b) {
    u64 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 t = (u128)a.limb[i] + b.limb[i] + carry;
        a.limb[i] = (u64)t;
        carry = (u64)(t >> 64);
    }
    return carry;
}

u64 sub_borrow(U256& a, const U256& b) {
    u64 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        u128 t = (u128)a.limb[i] - b.limb[i] - borrow;
        a.limb[i] = (u64)t;
        borrow = (u64)((t >> 64) & 1);
    }
    return borrow;
}

u64 mul_small_add(U256& a, u64 m, u64 add) {
    u64 carry = add;
    for (int i = 0; i < 4; ++i) {
        u128 t = (u128)a.limb[i] * m + carry;
        a.limb[i] = (u64)t;
        carry = (u64)(t >> 64);
    }
    return carry;
}

u64 divmod_small(U256& a, u64 d) {
    u128 rem = 0;
    for (int i = 3; i >= 0; --i) {
        u128 cur = (rem << 64) | a.limb[i];
        a.limb[i] = (u64)(cur / d);
        rem = cur % d;
    }
    return (u64)rem;
}

U256 u256_from_decimal(std::string_view s) {
    if (s.empty()) fail(Errc::parse_error, "empty decimal string");
    U256 v;
    for (char ch : s) {
        if (ch < '0' || ch > '9') fail(Errc::parse_error, std::string("bad decimal digit in \"") + std::string(s) + "\"");
        if (mul_small_add(v, 10, (u64)(ch - '0')) != 0)
            fail(Errc::parse_error, "decimal value exceeds 256 bits");
    }
    return v;
}

std::string u256_to_decimal(const U256& v) {
    if (v.is_zero()) return "0";
    U256 t = v;
    std::string out;
    while (!t.is_zero()) out.push_back((char)('0' + divmod_small(t, 10)));
    return std::string(out.rbegin(), out.rend());
}

} // namespace settle
