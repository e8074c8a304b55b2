#pragma once

#include <filesystem>
#include <map>

#include "otds/block_ref.hpp"
#include "otds/contracts.hpp"

namespace otds::ledger {

using ContractId = Hash32;

struct Transaction {
    enum class Kind : std::uint8_t { Deploy = 0, Trigger = 1 };

    Kind kind = Kind::Deploy;
    bool accepted = true;    // triggers may be recorded as failed
    ContractId contract_id{};  // Trigger only
    Bytes body;              // Deploy: ContractSpec encoding; Trigger: Trigger encoding

    bool operator==(const Transaction &) const = default;
};

struct Block {
    std::uint64_t height = 0;
    Hash32 prev_hash{};
    std::vector<Transaction> transactions;
    Hash32 block_hash{};  // H(prev_hash || height || payload_digest)

    BlockRef ref() const { return BlockRef{height, block_hash}; }
};

struct ContractRecord {
    contracts::ContractSpec spec;
    contracts::ContractState state;
    BlockRef aux_ref;        // reserved block signed inside tau
    BlockRef inclusion_ref;  // block carrying the deploy transaction
};

struct SubmitResult {
    contracts::TriggerStatus status;
    contracts::ContractState state;  // post-submission state of the contract
};

// Single-writer simulated chain. Blocks and past contract records are never
// mutated; a contract's state only grows by accepted triggers.
class Ledger {
public:
    // Seals pending transactions into a new block and returns its ref. The
    // first call creates the genesis block at height 0.
    BlockRef advance_block();

    // Two-phase deployment: the spec's aux must equal the current tip ref
    // (reserved via advance_block before signing). The deploy transaction is
    // sealed into the following block.
    ContractId deploy_contract(const contracts::ContractSpec &spec);

    SubmitResult submit_trigger(const ContractId &id, const contracts::Trigger &trig);

    const ContractRecord *get_contract(const ContractId &id) const;

    const std::vector<Block> &blocks() const { return blocks_; }
    bool empty() const { return blocks_.empty(); }
    BlockRef tip() const;

    // Append-only file of length-prefixed block records; loading replays every
    // transaction and verifies the hash chain.
    Bytes serialize() const;
    static Ledger deserialize(std::span<const std::uint8_t> bytes);
    void save(const std::filesystem::path &path) const;
    static Ledger load(const std::filesystem::path &path);

    static ContractId contract_id_for(const contracts::ContractSpec &spec);

private:
    Block seal_block(std::vector<Transaction> txs);

    std::vector<Block> blocks_;
    std::vector<Transaction> pending_;
    std::map<ContractId, ContractRecord> contracts_;
};

}  // namespace otds::ledger
