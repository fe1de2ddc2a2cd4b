#include "settle/sponge.hpp"

#include "settle/errors.hpp"
#include "settle/rng.hpp"

namespace settle {

Sponge::Sponge(const HashConfig& cfg) : cfg_(cfg) {
    if (cfg_.max_arity < 2 || cfg_.max_arity > 16)
        fail(Errc::config_invalid, "hash arity must be in [2, 16]");
    if (cfg_.rounds < 1) fail(Errc::config_invalid, "hash needs at least one round");
    if (cfg_.sbox_exponent < 3 || (cfg_.sbox_exponent % 2) == 0)
        fail(Errc::config_invalid, "sbox exponent must be odd and >= 3");

    unsigned max_width = cfg_.max_arity + 1;
    rc_.resize(max_width + 1);
    mds_.resize(max_width + 1);
    for (unsigned w = 2; w <= max_width; ++w) {
        rc_[w].assign(cfg_.rounds, std::vector<Fe>(w));
        for (unsigned r = 0; r < cfg_.rounds; ++r) {
            for (unsigned i = 0; i < w; ++i) {
                Rng stream(Rng::mix(cfg_.constant_seed, w, r, i));
                U256 v;
                for (auto& l : v.limb) l = stream.next();
                rc_[w][r][i] = Fe::from_canonical(v);
            }
        }
        // Cauchy matrix 1/(x_i + y_j) with x_i = i, y_j = w + j: invertible mix.
        mds_[w].assign(w, std::vector<Fe>(w));
        for (unsigned i = 0; i < w; ++i)
            for (unsigned j = 0; j < w; ++j)
                mds_[w][i][j] = fe(i + w + j).inverse();
    }
}

void Sponge::permute(std::span<Fe> state) const {
    unsigned w = (unsigned)state.size();
    const U256 exp((std::uint64_t)cfg_.sbox_exponent);
    std::vector<Fe> next(w);
    for (unsigned r = 0; r < cfg_.rounds; ++r) {
        for (unsigned i = 0; i < w; ++i) state[i] = (state[i] + rc_[w][r][i]).pow(exp);
        for (unsigned i = 0; i < w; ++i) {
            Fe acc;
            for (unsigned j = 0; j < w; ++j) acc += mds_[w][i][j] * state[j];
            next[i] = acc;
        }
        for (unsigned i = 0; i < w; ++i) state[i] = next[i];
    }
}

Fe Sponge::hash(std::span<const Fe> inputs) const {
    if (inputs.empty()) fail(Errc::empty_input, "sponge input is empty");
    if (inputs.size() > cfg_.max_arity)
        fail(Errc::arity_exceeded, "sponge arity " + std::to_string(inputs.size()) +
                                       " exceeds max " + std::to_string(cfg_.max_arity));
    unsigned w = width_for_arity((unsigned)inputs.size());
    std::vector<Fe> state(w);
    state[0] = fe(inputs.size()); // arity domain tag
    for (size_t i = 0; i < inputs.size(); ++i) state[i + 1] = inputs[i];
    permute(state);
    return state[0];
}

Fe Sponge::hash2(const Fe& a, const Fe& b) const {
    Fe in[2] = {a, b};
    return hash(in);
}

Fe Sponge::hash3(const Fe& a, const Fe& b, const Fe& c) const {
    Fe in[3] = {a, b, c};
    return hash(in);
}

const Fe& Sponge::round_constant(unsigned width, unsigned round, unsigned lane) const {
    return rc_[width][round][lane];
}

const std::vector<std::vector<Fe>>& Sponge::mds(unsigned width) const { return mds_[width]; }

} // namespace settle
