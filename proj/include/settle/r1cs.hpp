#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "settle/field.hpp"

namespace settle {

enum class Vis : std::uint8_t { constant_one, public_input, private_witness };

/// Handle to a constraint-system variable. Index 0 is the constant 1.
struct VarId {
    std::uint32_t index = 0;
    bool operator==(const VarId&) const = default;
};

class Witness;

/// Sparse linear combination sum(coeff_i * var_i). Duplicate variables are
/// allowed; their coefficients add up at evaluation.
class LinComb {
public:
    struct Term {
        Fe coeff;
        std::uint32_t var;
    };

    LinComb() = default;
    LinComb(VarId v) { terms_.push_back({Fe::one(), v.index}); } // NOLINT: implicit by design
    static LinComb constant(const Fe& c);
    static LinComb zero() { return LinComb(); }

    LinComb& add_term(const Fe& coeff, VarId v);
    LinComb& operator+=(const LinComb& o);
    LinComb& operator-=(const LinComb& o);
    LinComb operator+(const LinComb& o) const;
    LinComb operator-(const LinComb& o) const;
    LinComb operator*(const Fe& scalar) const;

    Fe eval(const Witness& w) const;
    const std::vector<Term>& terms() const { return terms_; }
    std::uint32_t max_var() const;

private:
    std::vector<Term> terms_;
};

inline LinComb operator+(const LinComb& lc, const Fe& c) { return lc + LinComb::constant(c); }
inline LinComb operator-(const Fe& c, const LinComb& lc) { return LinComb::constant(c) - lc; }

/// Total assignment of values to variables; index 0 holds 1.
class Witness {
public:
    Witness() : values_(1, Fe::one()) {}
    explicit Witness(std::vector<Fe> values) : values_(std::move(values)) {}

    size_t size() const { return values_.size(); }
    const Fe& value(std::uint32_t index) const { return values_[index]; }
    const Fe& value(VarId v) const { return values_[v.index]; }
    void set(VarId v, const Fe& f) { values_[v.index] = f; }
    void push(const Fe& f) { values_.push_back(f); }
    const std::vector<Fe>& values() const { return values_; }
    std::vector<Fe>& values() { return values_; }

private:
    std::vector<Fe> values_;
};

struct Constraint {
    LinComb a, b, c; // enforces eval(a) * eval(b) = eval(c)
};

/// Rank-1 constraint system. Single-owner while under construction; immutable
/// and freely shareable once sealed.
class ConstraintSystem {
public:
    ConstraintSystem();

    VarId alloc(Vis vis);                                // throws Errc::finalized when sealed
    void enforce(LinComb a, LinComb b, LinComb c);       // throws Errc::unknown_variable
    void seal() { sealed_ = true; }
    bool sealed() const { return sealed_; }

    size_t constraint_count() const { return constraints_.size(); }
    size_t variable_count() const { return visibility_.size(); }
    size_t public_count() const { return public_vars_.size(); }
    const std::vector<std::uint32_t>& public_vars() const { return public_vars_; }
    Vis visibility(std::uint32_t index) const { return visibility_[index]; }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    struct CheckResult {
        bool satisfied = false;
        size_t first_violation = 0; // valid only when !satisfied
    };
    /// Evaluates constraints in order; reports the first violated index.
    /// Throws Errc::incomplete_witness if the witness is not total.
    CheckResult check(const Witness& w) const;

    /// Line-oriented dump (one constraint per line, decimal coefficients),
    /// stable across runs for diffing.
    std::string dump() const;

private:
    void validate_vars(const LinComb& lc) const;

    std::vector<Vis> visibility_;
    std::vector<std::uint32_t> public_vars_; // allocation order
    std::vector<Constraint> constraints_;
    bool sealed_ = false;
};

} // namespace settle
