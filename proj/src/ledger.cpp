#include "otds/ledger.hpp"

#include <fstream>

#include "otds/errors.hpp"
#include "otds/hash.hpp"

namespace otds::ledger {

namespace {

Bytes encode_transaction(const Transaction &tx) {
    Bytes out;
    put_u8(out, static_cast<std::uint8_t>(tx.kind));
    put_u8(out, tx.accepted ? 1 : 0);
    if (tx.kind == Transaction::Kind::Trigger) put_bytes(out, tx.contract_id);
    put_u32le(out, static_cast<std::uint32_t>(tx.body.size()));
    put_bytes(out, tx.body);
    return out;
}

Transaction read_transaction(ByteReader &r) {
    Transaction tx;
    std::uint8_t kind = r.u8();
    if (kind > 1) throw DecodeError("unknown transaction kind");
    tx.kind = static_cast<Transaction::Kind>(kind);
    std::uint8_t accepted = r.u8();
    if (accepted > 1) throw DecodeError("invalid accepted flag");
    tx.accepted = accepted == 1;
    if (tx.kind == Transaction::Kind::Trigger) tx.contract_id = r.hash32();
    std::uint32_t len = r.u32le();
    auto body = r.take(len);
    tx.body.assign(body.begin(), body.end());
    return tx;
}

Hash32 payload_digest(const std::vector<Transaction> &txs) {
    Bytes payload;
    for (const auto &tx : txs) put_bytes(payload, encode_transaction(tx));
    return sha256(payload);
}

Hash32 compute_block_hash(const Hash32 &prev, std::uint64_t height, const Hash32 &digest) {
    Bytes data;
    put_bytes(data, prev);
    put_u64le(data, height);
    put_bytes(data, digest);
    return sha256(data);
}

}  // namespace

BlockRef Ledger::tip() const {
    if (blocks_.empty()) throw std::logic_error("ledger has no blocks");
    return blocks_.back().ref();
}

Block Ledger::seal_block(std::vector<Transaction> txs) {
    Block block;
    block.height = blocks_.empty() ? 0 : blocks_.back().height + 1;
    block.prev_hash = blocks_.empty() ? Hash32{} : blocks_.back().block_hash;
    block.transactions = std::move(txs);
    block.block_hash =
        compute_block_hash(block.prev_hash, block.height, payload_digest(block.transactions));
    return block;
}

BlockRef Ledger::advance_block() {
    blocks_.push_back(seal_block(std::move(pending_)));
    pending_.clear();
    return blocks_.back().ref();
}

ContractId Ledger::contract_id_for(const contracts::ContractSpec &spec) {
    Bytes data = spec.aux.encode();
    put_bytes(data, spec.encode());
    return sha256(data);
}

ContractId Ledger::deploy_contract(const contracts::ContractSpec &spec) {
    if (blocks_.empty()) throw DeployError("no block reserved for deployment");
    if (!(spec.aux == tip())) throw DeployError("aux does not match the reserved block");
    if (spec.n < 1) throw DeployError("contract n must be positive");
    ContractId id = contract_id_for(spec);
    if (contracts_.contains(id)) throw DeployError("duplicate contract id");

    Transaction tx;
    tx.kind = Transaction::Kind::Deploy;
    tx.body = spec.encode();
    pending_.push_back(std::move(tx));
    BlockRef inclusion = advance_block();

    contracts_.emplace(id, ContractRecord{spec, {}, spec.aux, inclusion});
    return id;
}

SubmitResult Ledger::submit_trigger(const ContractId &id, const contracts::Trigger &trig) {
    auto it = contracts_.find(id);
    if (it == contracts_.end())
        return {contracts::TriggerStatus::UnknownContract, {}};

    auto result = contracts::evaluate(it->second.spec, it->second.state, trig);

    // every submission is recorded, accepted or not, and sealed into a block
    Transaction tx;
    tx.kind = Transaction::Kind::Trigger;
    tx.accepted = result.status == contracts::TriggerStatus::Accepted;
    tx.contract_id = id;
    tx.body = trig.encode();
    pending_.push_back(std::move(tx));
    advance_block();

    if (result.status == contracts::TriggerStatus::Accepted) it->second.state = result.state;
    return {result.status, it->second.state};
}

const ContractRecord *Ledger::get_contract(const ContractId &id) const {
    auto it = contracts_.find(id);
    return it == contracts_.end() ? nullptr : &it->second;
}

Bytes Ledger::serialize() const {
    Bytes out;
    for (const auto &block : blocks_) {
        Bytes record;
        put_u64le(record, block.height);
        put_bytes(record, block.prev_hash);
        put_u32le(record, static_cast<std::uint32_t>(block.transactions.size()));
        for (const auto &tx : block.transactions) put_bytes(record, encode_transaction(tx));
        put_bytes(record, block.block_hash);
        put_u32le(out, static_cast<std::uint32_t>(record.size()));
        put_bytes(out, record);
    }
    return out;
}

Ledger Ledger::deserialize(std::span<const std::uint8_t> bytes) {
    Ledger ledger;
    ByteReader outer(bytes);
    while (outer.remaining() > 0) {
        std::uint32_t len = outer.u32le();
        ByteReader r(outer.take(len));
        Block block;
        block.height = r.u64le();
        block.prev_hash = r.hash32();
        std::uint32_t ntx = r.u32le();
        for (std::uint32_t i = 0; i < ntx; ++i) block.transactions.push_back(read_transaction(r));
        block.block_hash = r.hash32();
        r.expect_end();

        // chain integrity
        std::uint64_t expected_height = ledger.blocks_.empty() ? 0 : ledger.blocks_.back().height + 1;
        Hash32 expected_prev =
            ledger.blocks_.empty() ? Hash32{} : ledger.blocks_.back().block_hash;
        if (block.height != expected_height || block.prev_hash != expected_prev)
            throw DecodeError("broken hash chain in ledger file");
        if (block.block_hash !=
            compute_block_hash(block.prev_hash, block.height, payload_digest(block.transactions)))
            throw DecodeError("block hash mismatch in ledger file");

        // replay transactions against the contract store
        for (const auto &tx : block.transactions) {
            if (tx.kind == Transaction::Kind::Deploy) {
                auto spec = contracts::ContractSpec::decode(tx.body);
                if (ledger.blocks_.empty() || !(spec.aux == ledger.blocks_.back().ref()))
                    throw DecodeError("deploy aux does not match predecessor block");
                ContractId id = contract_id_for(spec);
                if (ledger.contracts_.contains(id)) throw DecodeError("duplicate contract id");
                ledger.contracts_.emplace(id,
                                          ContractRecord{spec, {}, spec.aux, block.ref()});
            } else {
                auto it = ledger.contracts_.find(tx.contract_id);
                if (it == ledger.contracts_.end())
                    throw DecodeError("trigger for unknown contract");
                auto trig = contracts::Trigger::decode(it->second.spec.pp.backend, tx.body);
                auto result = contracts::evaluate(it->second.spec, it->second.state, trig);
                bool accepted = result.status == contracts::TriggerStatus::Accepted;
                if (accepted != tx.accepted)
                    throw DecodeError("replayed trigger outcome mismatch");
                if (accepted) it->second.state = result.state;
            }
        }
        ledger.blocks_.push_back(std::move(block));
    }
    return ledger;
}

void Ledger::save(const std::filesystem::path &path) const {
    auto data = serialize();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open ledger file for writing: " + path.string());
    out.write(reinterpret_cast<const char *>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("failed to write ledger file: " + path.string());
}

Ledger Ledger::load(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open ledger file: " + path.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize(data);
}

}  // namespace otds::ledger
