#pragma once

#include <algorithm>
#include <vector>

#include "settle/circuits.hpp"
#include "settle/gadgets.hpp"
#include "settle/r1cs.hpp"
#include "settle/rng.hpp"

namespace settle::testing {

/// Perturbs `trials` randomly chosen non-free witness slots by +1, one at a
/// time, and counts how many leave the system satisfied. A sound system
/// reports zero.
inline size_t perturbation_survivors(const ConstraintSystem& cs, const Witness& base,
                                     const std::vector<std::uint32_t>& free_vars, Rng& rng, size_t trials,
                                     std::uint32_t min_var = 1) {
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t i = min_var; i < base.size(); ++i)
        if (std::find(free_vars.begin(), free_vars.end(), i) == free_vars.end()) candidates.push_back(i);

    size_t survivors = 0;
    Witness w = base;
    for (size_t k = 0; k < trials; ++k) {
        std::uint32_t idx = candidates[rng.below(candidates.size())];
        Fe old = w.value(idx);
        w.set(VarId{idx}, old + Fe::one());
        if (cs.check(w).satisfied) ++survivors;
        w.set(VarId{idx}, old);
    }
    return survivors;
}

inline gadgets::MatVal random_matrix(Rng& rng, size_t n, size_t t, std::uint64_t cap = 1000) {
    gadgets::MatVal m(n, std::vector<Fe>(t));
    for (auto& row : m)
        for (auto& cell : row) cell = fe(rng.below(cap));
    return m;
}

/// Random cumulative matrix with nonzero entries confined to the first
/// `covered` columns.
inline gadgets::MatVal random_masked_matrix(Rng& rng, size_t n, size_t t, size_t covered, std::uint64_t cap = 1000) {
    gadgets::MatVal m(n, std::vector<Fe>(t));
    for (auto& row : m)
        for (size_t c = 0; c < covered; ++c) row[c] = fe(rng.below(cap));
    return m;
}

inline std::vector<Fe> random_roster(Rng& rng, size_t n, size_t effective) {
    std::vector<Fe> p(n);
    for (size_t i = 0; i < effective; ++i) p[i] = fe(0x1000 + i * 7 + rng.below(5));
    return p;
}

} // namespace settle::testing
