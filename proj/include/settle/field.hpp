#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "settle/rng.hpp"
#include "settle/u256.hpp"

namespace settle {

/// Prime-field context: modulus plus Montgomery constants. Immutable once built.
/// Element values are stored in Montgomery form and only make sense relative to
/// one context; the process uses a single ambient context (see global_field).
class Field {
public:
    explicit Field(const U256& modulus);

    const U256& modulus() const { return p_; }

    // Montgomery-domain primitives over raw limb values.
    U256 add(const U256& a, const U256& b) const;
    U256 sub(const U256& a, const U256& b) const;
    U256 neg(const U256& a) const;
    U256 mul(const U256& a, const U256& b) const; // REDC(a*b)
    U256 to_mont(const U256& canonical) const;
    U256 from_mont(const U256& mont) const;
    /// Reduces an arbitrary 256-bit value mod p, returning Montgomery form.
    U256 reduce_to_mont(const U256& any) const;
    /// x^e in the Montgomery domain, e canonical.
    U256 pow(const U256& base_mont, const U256& e) const;
    /// Multiplicative inverse via Fermat. Throws Errc::zero_inverse on zero.
    U256 inverse(const U256& mont) const;

    const U256& one_mont() const { return r_mod_p_; }

private:
    U256 p_;
    U256 r_mod_p_;  // 2^256 mod p (Montgomery form of 1)
    U256 r2_mod_p_; // 2^512 mod p
    std::uint64_t n0_; // -p^{-1} mod 2^64
};

/// Ambient field. Defaults to the BN254 scalar field; a different modulus may be
/// installed once at startup, before any element is created.
const Field& global_field();
void set_global_modulus(const U256& modulus);
extern const char* const kBn254ScalarModulusDecimal;

/// An element of the ambient prime field. Canonical value in [0, p); internally
/// kept in Montgomery form. Immutable value type, safe to share across threads.
class Fe {
public:
    Fe() = default; // zero

    static Fe from_u64(std::uint64_t v);
    static Fe from_canonical(const U256& v); // reduces mod p
    static Fe from_decimal(std::string_view s);
    static Fe one() { return from_u64(1); }
    static Fe random(Rng& rng);

    U256 canonical() const { return global_field().from_mont(m_); }
    std::string to_decimal() const { return u256_to_decimal(canonical()); }
    /// Canonical value as u64. Throws Errc::out_of_range if it does not fit.
    std::uint64_t as_u64() const;

    bool is_zero() const { return m_.is_zero(); }

    Fe operator+(const Fe& o) const { return wrap(global_field().add(m_, o.m_)); }
    Fe operator-(const Fe& o) const { return wrap(global_field().sub(m_, o.m_)); }
    Fe operator*(const Fe& o) const { return wrap(global_field().mul(m_, o.m_)); }
    Fe operator-() const { return wrap(global_field().neg(m_)); }
    Fe& operator+=(const Fe& o) { m_ = global_field().add(m_, o.m_); return *this; }
    Fe& operator-=(const Fe& o) { m_ = global_field().sub(m_, o.m_); return *this; }
    Fe& operator*=(const Fe& o) { m_ = global_field().mul(m_, o.m_); return *this; }

    Fe inverse() const { return wrap(global_field().inverse(m_)); }
    Fe pow(const U256& e) const { return wrap(global_field().pow(m_, e)); }

    bool operator==(const Fe& o) const { return m_ == o.m_; }
    bool operator!=(const Fe& o) const { return m_ != o.m_; }
    /// Total order on the Montgomery representation; fine for map keys,
    /// unrelated to numeric order.
    bool operator<(const Fe& o) const { return cmp(m_, o.m_) < 0; }

    const U256& raw_mont() const { return m_; }
    static Fe wrap(const U256& mont) { Fe f; f.m_ = mont; return f; }

private:
    U256 m_{};
};

inline Fe fe(std::uint64_t v) { return Fe::from_u64(v); }

} // namespace settle
