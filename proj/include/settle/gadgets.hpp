#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "settle/r1cs.hpp"
#include "settle/sponge.hpp"

namespace settle {

/// Immediate-mode circuit builder: allocates variables, assigns their witness
/// values as it goes, and appends constraints. Constraint structure never
/// depends on assigned values, so building with any inputs yields the same
/// sealed shape. Single-threaded per constraint system.
class Builder {
public:
    Builder(ConstraintSystem& cs, const Sponge& sponge) : cs_(cs), sponge_(sponge) {}

    VarId alloc(const Fe& value, Vis vis = Vis::private_witness) {
        VarId v = cs_.alloc(vis);
        witness_.push(value);
        return v;
    }

    const Fe& value(VarId v) const { return witness_.value(v); }
    Fe value(const LinComb& lc) const { return lc.eval(witness_); }

    void enforce(LinComb a, LinComb b, LinComb c) { cs_.enforce(std::move(a), std::move(b), std::move(c)); }

    /// Fresh product variable with a*b = out.
    VarId mul(const LinComb& a, const LinComb& b) {
        VarId out = alloc(value(a) * value(b));
        enforce(a, b, out);
        return out;
    }

    void assert_eq(const LinComb& a, const LinComb& b) { enforce(a - b, LinComb::constant(Fe::one()), LinComb::zero()); }
    void assert_zero(const LinComb& a) { assert_eq(a, LinComb::zero()); }

    /// Records a witness slot whose value is not pinned by any constraint
    /// (e.g. the IsZero inverse when the probe is zero). Perturbation tests
    /// skip these.
    void mark_free(VarId v) { free_vars_.push_back(v.index); }
    const std::vector<std::uint32_t>& free_vars() const { return free_vars_; }

    const Sponge& sponge() const { return sponge_; }
    const Witness& witness() const { return witness_; }
    Witness take_witness() { return std::move(witness_); }
    ConstraintSystem& cs() { return cs_; }

private:
    ConstraintSystem& cs_;
    const Sponge& sponge_;
    Witness witness_;
    std::vector<std::uint32_t> free_vars_;
};

namespace gadgets {

using Mat = std::vector<std::vector<LinComb>>;
using MatVal = std::vector<std::vector<Fe>>;

template <class T>
std::vector<T> vec_row_major(const std::vector<std::vector<T>>& m) {
    std::vector<T> out;
    for (const auto& row : m) out.insert(out.end(), row.begin(), row.end());
    return out;
}

/// Prefix indicator ({1}^x, {0}^(len-x)). Constraints: sum(y) = x, booleanity
/// of y, booleanity of the derived transition indicators c plus sum(c) = 1.
struct Lpi {
    std::vector<VarId> bits;
    std::vector<LinComb> transitions; // len + 1 derived combinations
};
Lpi lpi(Builder& b, const LinComb& x, size_t length);
std::vector<Fe> lpi_eval(std::uint64_t x, size_t length); // throws out_of_range when x > length

/// y = 1 iff x = 0, via the inverse trick; exactly two constraints.
struct IsZeroBit {
    VarId flag;
    VarId inv;
};
IsZeroBit is_zero(Builder& b, const LinComb& x);
Fe is_zero_eval(const Fe& x);

/// Single sponge call H_m over m <= kappa inputs.
LinComb sponge_hash(Builder& b, std::span<const LinComb> inputs);

/// Chained sponge over a vector of any length: chunks of at most kappa-1
/// elements absorbed into a state seeded with `seed`.
LinComb modular_hash(Builder& b, std::span<const LinComb> xs, const LinComb& seed);
Fe modular_hash_eval(const Sponge& sponge, std::span<const Fe> xs, const Fe& seed);

/// Batch a of size B from xs, zero-padded past the end; selection-matrix
/// construction, linear in N.
std::vector<LinComb> batch_extract(Builder& b, std::span<const LinComb> xs, const LinComb& a, size_t batch);
std::vector<Fe> batch_extract_eval(std::span<const Fe> xs, std::uint64_t a, size_t batch);

/// y_i = sum_t V[i][t] * r_t.
std::vector<LinComb> sum_row(Builder& b, const Mat& v, std::span<const LinComb> r);
std::vector<Fe> sum_row_eval(const MatVal& v, std::span<const Fe> r);

/// V[i][t] * (1 - r_t) = 0 for every cell; exactly N*T constraints.
void mask_check(Builder& b, const Mat& v, std::span<const LinComb> r);
bool mask_check_eval(const MatVal& v, std::span<const Fe> r);

/// h_A = H_2(A_x, A_y).
LinComb pk_digest_gadget(Builder& b, const LinComb& ax, const LinComb& ay);

/// C = H_3(H_M(vec(V)), H_M(P), rho), plus attribution constraints binding the
/// signature tuple wires to the key witness. Inner H_M chains are seeded with
/// 0; the salt enters only the outer H_3. When `sigma` is absent the signature
/// wires are assigned by recomputation from `sk` (honest signer); a captured
/// tuple can be supplied instead.
struct CommitmentWires {
    LinComb c;
    VarId s1, s2;
};
CommitmentWires verify_commitment(Builder& b, const Mat& v, std::span<const LinComb> roster, const LinComb& rho,
                                  const LinComb& ax, const LinComb& ay, const LinComb& sk,
                                  std::optional<std::pair<Fe, Fe>> sigma = std::nullopt);
Fe commitment_eval(const Sponge& sponge, const MatVal& v, std::span<const Fe> roster, const Fe& rho);

} // namespace gadgets
} // namespace settle
