#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "settle/circuits.hpp"
#include "settle/ledger.hpp"

namespace settle {

enum class Variant { challenge, proof };
enum class Mode { one_shot, multi_shot };
enum class Status { committed, reward_init, challenged, distributing, distributed };

const char* variant_name(Variant v);
const char* mode_name(Mode m);
const char* status_name(Status s);

struct ContractParams {
    Fe h_agg;
    Fe rho_ref; // opaque reference to the salt (a hash); never checked on-chain
    Fe genesis_commitment;
    std::size_t participant_count = 0; // |P|, effective roster size
    Variant variant = Variant::challenge;
    Mode mode = Mode::multi_shot;
    std::int64_t dispute_window_s = 86'400;
    Wei stake = 0;
    Wei challenge_bond = 0; // 0 selects the default (10x challenge gas at the ledger price)
    // Extension, off by default: after a long quiet period anyone may finalize,
    // so committed rounds stay distributable if the owner disappears.
    bool force_finalize_enabled = false;
    std::int64_t force_finalize_timeout_s = 30 * 86'400;
};

/// Circuit handles the contract verifies instances against.
struct Verifiers {
    const Circuit* transition = nullptr;
    const Circuit* challenge = nullptr;
    const Circuit* distribution = nullptr;
};

/// The on-chain settlement state machine. Commitment history is held with the
/// genesis commitment at slot 0, so paper-style superscripts map directly to
/// indices; the round counter always equals the history length.
class SettlementContract {
public:
    SettlementContract(Ledger& ledger, Address owner, const ContractParams& params, const Verifiers& verifiers);

    // Transaction entry points; each runs as one metered ledger transaction.
    TxReceipt submit_commit(Address sender, const Fe& c, const SatisfiedInstance* proof = nullptr);
    TxReceipt submit_finalize(Address sender);
    TxReceipt submit_challenge(Address sender, std::uint64_t r_prime, const SatisfiedInstance& proof, Wei bond);
    TxReceipt submit_counter(Address sender, std::uint64_t r_prime, const SatisfiedInstance& proof);
    TxReceipt submit_distribute(Address sender, std::span<const Fe> participants, std::span<const Fe> amounts,
                                const SatisfiedInstance& proof);
    TxReceipt submit_force_finalize(Address sender);

    // Views.
    Status status() const { return st_.tau; }
    std::uint64_t round() const { return st_.r; }
    std::uint64_t last_challenged_round() const { return st_.r_last; }
    std::int64_t unlock_time() const { return st_.t_unlock; }
    std::uint64_t distributed_count() const { return st_.xi; }
    std::size_t commit_count() const { return st_.commitments.size() - 1; }
    const Fe& commitment(std::size_t index) const { return st_.commitments[index]; } // 0 = genesis
    Address address() const { return self_; }
    Address owner() const { return owner_; }
    Wei escrow() const { return ledger_.balance(self_); }
    Wei bond_held(Address challenger) const;
    Wei required_bond() const;
    const ContractParams& params() const { return params_; }
    std::uint64_t challenge_attempts() const { return st_.challenge_attempts; }

private:
    struct State {
        Status tau = Status::committed;
        std::uint64_t r = 1;
        std::uint64_t r_last = 2;
        std::int64_t t_unlock = 0;
        std::uint64_t xi = 0;
        std::vector<Fe> commitments; // [0] = genesis
        std::vector<bool> paid_batches;
        std::map<Address, Wei> bonds;
        Address last_challenger = 0;
        std::uint64_t challenge_attempts = 0;
        std::int64_t last_activity = 0;
    };

    TxReceipt run(Address sender, const std::string& function, std::uint64_t gas, const std::function<void()>& body);
    void require_owner(Address sender) const;
    bool verify(const Circuit* circuit, const SatisfiedInstance& proof, std::span<const Fe> expected) const;
    std::int64_t effective_window() const;
    void refund_bonds();

    void commit_impl(Address sender, const Fe& c, const SatisfiedInstance* proof);
    void finalize_impl(Address sender);
    void challenge_impl(Address sender, std::uint64_t r_prime, const SatisfiedInstance& proof, Wei bond);
    void counter_impl(Address sender, std::uint64_t r_prime, const SatisfiedInstance& proof);
    void distribute_impl(Address sender, std::span<const Fe> participants, std::span<const Fe> amounts,
                         const SatisfiedInstance& proof);
    void force_finalize_impl(Address sender);

    Ledger& ledger_;
    Address owner_;
    Address self_;
    ContractParams params_;
    Verifiers verifiers_;
    State st_;
};

/// Executes the create() transaction: stakes the reward pool and initializes
/// the state machine. On revert the returned contract pointer is null.
struct CreateResult {
    TxReceipt receipt;
    std::unique_ptr<SettlementContract> contract;
};
CreateResult create_contract(Ledger& ledger, Address owner, const ContractParams& params, const Verifiers& verifiers);

} // namespace settle
