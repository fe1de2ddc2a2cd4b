#include <doctest.h>

#include "settle/errors.hpp"
#include "settle/r1cs.hpp"

using namespace settle;

TEST_CASE("allocation indexing convention") {
    ConstraintSystem cs;
    VarId first = cs.alloc(Vis::private_witness);
    CHECK(first.index == 1); // 0 is the constant one
    VarId second = cs.alloc(Vis::public_input);
    CHECK(second.index == 2);
    CHECK(cs.public_vars() == std::vector<std::uint32_t>{2});
    CHECK(cs.variable_count() == 3);
}

TEST_CASE("alloc after seal fails") {
    ConstraintSystem cs;
    cs.seal();
    CHECK_THROWS_AS((void)cs.alloc(Vis::private_witness), Error);
}

TEST_CASE("enforce validates variables") {
    ConstraintSystem cs;
    VarId x = cs.alloc(Vis::private_witness);
    LinComb bogus;
    bogus.add_term(Fe::one(), VarId{17});
    CHECK_THROWS_AS(cs.enforce(bogus, LinComb(x), LinComb::zero()), Error);
}

TEST_CASE("tautology x*1 = x always satisfiable") {
    ConstraintSystem cs;
    VarId x = cs.alloc(Vis::private_witness);
    cs.enforce(LinComb(x), LinComb::constant(Fe::one()), LinComb(x));
    Witness w;
    w.push(fe(12345));
    CHECK(cs.check(w).satisfied);
}

TEST_CASE("x*x = 9 satisfied only by a square root") {
    ConstraintSystem cs;
    VarId x = cs.alloc(Vis::private_witness);
    cs.enforce(LinComb(x), LinComb(x), LinComb::constant(fe(9)));

    Witness w3;
    w3.push(fe(3));
    CHECK(cs.check(w3).satisfied);

    Witness w4;
    w4.push(fe(4));
    auto res = cs.check(w4);
    CHECK_FALSE(res.satisfied);
    CHECK(res.first_violation == 0);
}

TEST_CASE("x*y = z direct evaluation") {
    ConstraintSystem cs;
    VarId x = cs.alloc(Vis::private_witness);
    VarId y = cs.alloc(Vis::private_witness);
    VarId z = cs.alloc(Vis::private_witness);
    cs.enforce(LinComb(x), LinComb(y), LinComb(z));

    Witness good;
    good.push(fe(2));
    good.push(fe(3));
    good.push(fe(6));
    CHECK(cs.check(good).satisfied);

    Witness bad;
    bad.push(fe(2));
    bad.push(fe(3));
    bad.push(fe(7));
    auto res = cs.check(bad);
    CHECK_FALSE(res.satisfied);
    CHECK(res.first_violation == 0);
}

TEST_CASE("empty system accepts any total witness") {
    ConstraintSystem cs;
    Witness w;
    CHECK(cs.check(w).satisfied);
    CHECK(cs.constraint_count() == 0);
}

TEST_CASE("incomplete witness is rejected") {
    ConstraintSystem cs;
    (void)cs.alloc(Vis::private_witness);
    Witness w; // missing the variable
    CHECK_THROWS_AS((void)cs.check(w), Error);
}

TEST_CASE("first violation index is deterministic") {
    ConstraintSystem cs;
    VarId x = cs.alloc(Vis::private_witness);
    cs.enforce(LinComb(x), LinComb::constant(Fe::one()), LinComb::constant(fe(1)));
    cs.enforce(LinComb(x), LinComb(x), LinComb::constant(fe(1)));
    Witness w;
    w.push(fe(5)); // violates both; index 0 reported
    auto res = cs.check(w);
    CHECK_FALSE(res.satisfied);
    CHECK(res.first_violation == 0);
}

TEST_CASE("duplicate variables in a combination sum their coefficients") {
    ConstraintSystem cs;
    VarId x = cs.alloc(Vis::private_witness);
    LinComb twice;
    twice.add_term(Fe::one(), x);
    twice.add_term(Fe::one(), x);
    cs.enforce(twice, LinComb::constant(Fe::one()), LinComb::constant(fe(10)));
    Witness w;
    w.push(fe(5));
    CHECK(cs.check(w).satisfied);
}

TEST_CASE("constraint count and dump are stable") {
    auto build = [] {
        ConstraintSystem cs;
        VarId x = cs.alloc(Vis::private_witness);
        VarId y = cs.alloc(Vis::private_witness);
        cs.enforce(LinComb(x), LinComb(y), LinComb::constant(fe(42)));
        cs.enforce(LinComb(x) + LinComb(y), LinComb::constant(Fe::one()), LinComb(x));
        return cs;
    };
    ConstraintSystem a = build(), b = build();
    CHECK(a.constraint_count() == 2);
    CHECK(a.dump() == b.dump());
    CHECK(a.dump().find("42*v0") != std::string::npos); // decimal coefficient on the constant slot
}
