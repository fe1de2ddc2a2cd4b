#pragma once

#include <stdexcept>
#include <string>

namespace settle {

enum class Errc {
    zero_inverse,
    arity_exceeded,
    empty_input,
    finalized,
    unknown_variable,
    incomplete_witness,
    shape_mismatch,
    witness_generation_failed,
    out_of_range,
    batch_index_out_of_range,
    mask_violation,
    config_invalid,
    unknown_behavior,
    unknown_model,
    parse_error,
    io_error,
};

/// Library-level error. Contract reverts are a separate mechanism (see ledger.hpp):
/// they roll back state and surface as failed receipts, not exceptions.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace settle
