#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace settle {

/// 256-bit unsigned integer: four 64-bit limbs, little-endian.
struct U256 {
    std::array<std::uint64_t, 4> limb{0, 0, 0, 0};

    constexpr U256() = default;
    constexpr explicit U256(std::uint64_t v) : limb{v, 0, 0, 0} {}
    constexpr U256(std::uint64_t l0, std::uint64_t l1, std::uint64_t l2, std::uint64_t l3)
        : limb{l0, l1, l2, l3} {}

    bool is_zero() const { return limb[0] == 0 && limb[1] == 0 && limb[2] == 0 && limb[3] == 0; }

    bool bit(unsigned i) const { return (limb[i / 64] >> (i % 64)) & 1u; }

    /// Index of the highest set bit plus one; 0 for zero.
    unsigned bit_length() const;

    bool operator==(const U256& o) const { return limb == o.limb; }
    bool operator!=(const U256& o) const { return limb != o.limb; }
};

/// -1 / 0 / +1 comparison, most significant limb first.
int cmp(const U256& a, const U256& b);
inline bool operator<(const U256& a, const U256& b) { return cmp(a, b) < 0; }
inline bool operator>=(const U256& a, const U256& b) { return cmp(a, b) >= 0; }

/// a += b, returns the carry out of the top limb.
std::uint64_t add_carry(U256& a, const U256& b);
/// a -= b, returns the borrow out of the top limb.
std::uint64_t sub_borrow(U256& a, const U256& b);
/// a = a * m + add, returns the overflow limb.
std::uint64_t mul_small_add(U256& a, std::uint64_t m, std::uint64_t add);
/// a /= d, returns the remainder. d must be nonzero.
std::uint64_t divmod_small(U256& a, std::uint64_t d);

/// Parses a base-10 string. Throws Errc::parse_error on junk or overflow.
U256 u256_from_decimal(std::string_view s);
std::string u256_to_decimal(const U256& v);

} // namespace settle
