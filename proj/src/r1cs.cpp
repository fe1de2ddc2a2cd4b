#include "settle/r1cs.hpp"

#include <sstream>

#include "settle/errors.hpp"

namespace settle {

LinComb LinComb::constant(const Fe& c) {
    LinComb lc;
    if (!c.is_zero()) lc.terms_.push_back({c, 0});
    return lc;
}

LinComb& LinComb::add_term(const Fe& coeff, VarId v) {
    if (!coeff.is_zero()) terms_.push_back({coeff, v.index});
    return *this;
}

LinComb& LinComb::operator+=(const LinComb& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
}

LinComb& LinComb::operator-=(const LinComb& o) {
    for (const Term& t : o.terms_) terms_.push_back({-t.coeff, t.var});
    return *this;
}

LinComb LinComb::operator+(const LinComb& o) const {
    LinComb r = *this;
    r += o;
    return r;
}

LinComb LinComb::operator-(const LinComb& o) const {
    LinComb r = *this;
    r -= o;
    return r;
}

LinComb LinComb::operator*(const Fe& scalar) const {
    LinComb r;
    if (scalar.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) r.terms_.push_back({t.coeff * scalar, t.var});
    return r;
}

Fe LinComb::eval(const Witness& w) const {
    Fe acc;
    for (const Term& t : terms_) acc += t.coeff * w.value(t.var);
    return acc;
}

std::uint32_t LinComb::max_var() const {
    std::uint32_t m = 0;
    for (const Term& t : terms_)
        if (t.var > m) m = t.var;
    return m;
}

ConstraintSystem::ConstraintSystem() { visibility_.push_back(Vis::constant_one); }

VarId ConstraintSystem::alloc(Vis vis) {
    if (sealed_) fail(Errc::finalized, "constraint system is sealed");
    if (vis == Vis::constant_one) fail(Errc::config_invalid, "constant-one slot is fixed at index 0");
    auto index = (std::uint32_t)visibility_.size();
    visibility_.push_back(vis);
    if (vis == Vis::public_input) public_vars_.push_back(index);
    return VarId{index};
}

void ConstraintSystem::validate_vars(const LinComb& lc) const {
    for (const auto& t : lc.terms())
        if (t.var >= visibility_.size())
            fail(Errc::unknown_variable, "constraint references unallocated variable " + std::to_string(t.var));
}

void ConstraintSystem::enforce(LinComb a, LinComb b, LinComb c) {
    if (sealed_) fail(Errc::finalized, "constraint system is sealed");
    validate_vars(a);
    validate_vars(b);
    validate_vars(c);
    constraints_.push_back(Constraint{std::move(a), std::move(b), std::move(c)});
}

ConstraintSystem::CheckResult ConstraintSystem::check(const Witness& w) const {
    if (w.size() != visibility_.size())
        fail(Errc::incomplete_witness, "witness has " + std::to_string(w.size()) + " values, system has " +
                                           std::to_string(visibility_.size()) + " variables");
    if (w.value((std::uint32_t)0) != Fe::one())
        fail(Errc::incomplete_witness, "witness slot 0 must hold 1");
    for (size_t i = 0; i < constraints_.size(); ++i) {
        const Constraint& cn = constraints_[i];
        if (cn.a.eval(w) * cn.b.eval(w) != cn.c.eval(w)) return {false, i};
    }
    return {true, 0};
}

namespace {

void dump_lc(std::ostringstream& os, const LinComb& lc) {
    if (lc.terms().empty()) {
        os << "0";
        return;
    }
    bool first = true;
    for (const auto& t : lc.terms()) {
        if (!first) os << " + ";
        os << t.coeff.to_decimal() << "*v" << t.var;
        first = false;
    }
}

} // namespace

std::string ConstraintSystem::dump() const {
    std::ostringstream os;
    for (size_t i = 0; i < constraints_.size(); ++i) {
        os << i << ": (";
        dump_lc(os, constraints_[i].a);
        os << ") * (";
        dump_lc(os, constraints_[i].b);
        os << ") = (";
        dump_lc(os, constraints_[i].c);
        os << ")\n";
    }
    return os.str();
}

} // namespace settle
