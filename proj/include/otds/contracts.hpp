#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "otds/block_ref.hpp"
#include "otds/encryption.hpp"
#include "otds/nizk.hpp"
#include "otds/sigscheme.hpp"

namespace otds::contracts {

// One-shot commitment contract: anyone knowing log_G(Y) may trigger.
struct BasicPayload {
    group::GroupElement y;

    bool operator==(const BasicPayload &) const = default;
};

// Designated delegates: the user's dlog key plus a list of delegate keys; the
// trigger proof hides which of them acted.
struct DesignatedPayload {
    group::GroupElement upk_dl;
    std::vector<group::GroupElement> delegate_keys;  // k >= 1

    bool operator==(const DesignatedPayload &) const = default;
};

// Designated plus judge-openable signer encryption.
struct AccountablePayload {
    group::GroupElement upk_dl;
    std::vector<group::GroupElement> delegate_keys;
    group::GroupElement jpk;

    bool operator==(const AccountablePayload &) const = default;
};

using VariantPayload = std::variant<BasicPayload, DesignatedPayload, AccountablePayload>;

enum class Variant : std::uint8_t { Basic = 0, Designated = 1, Accountable = 2 };

Variant variant_of(const VariantPayload &payload);

struct ContractSpec {
    VariantPayload payload;
    std::uint32_t n = 1;  // permitted trigger count
    sigscheme::SchnorrSignature tau;
    group::GroupElement upk_sig;
    ledger::BlockRef aux;
    group::GroupParams pp;

    bool operator==(const ContractSpec &) const = default;

    // The portion covered by tau: variant payload, n, and aux.
    Bytes signed_payload() const;

    // Full canonical encoding; doubles as the deployed payload hashed into the
    // contract id.
    Bytes encode() const;
    static ContractSpec decode(std::span<const std::uint8_t> bytes);
};

struct ContractState {
    std::vector<Hash32> hashes;                          // length <= n, append-only
    std::vector<encryption::Ciphertext> ciphertexts;     // Accountable: one per accepted trigger

    bool operator==(const ContractState &) const = default;
};

struct Trigger {
    std::variant<nizk::DlogProof, nizk::OrProof, nizk::OrEncProof> proof;
    Hash32 h{};
    std::optional<encryption::Ciphertext> ct;  // Accountable only

    bool operator==(const Trigger &) const = default;

    Bytes encode() const;
    static Trigger decode(group::Backend b, std::span<const std::uint8_t> bytes);
    static Trigger read(group::Backend b, ByteReader &r);
    void put(Bytes &out) const;
};

enum class TriggerStatus : std::uint8_t {
    Accepted = 0,
    UnknownContract = 1,
    ContractConsumed = 2,
    InvalidProof = 3,
    FlavorMismatch = 4,
};

const char *to_string(TriggerStatus status);

struct EvalResult {
    TriggerStatus status;
    ContractState state;  // unchanged unless status == Accepted
};

// Pure state transition executed by the ledger on trigger submission.
EvalResult evaluate(const ContractSpec &spec, const ContractState &state, const Trigger &trig);

// Checks tau over (variant payload, n, aux) under the spec's signing key.
bool check_contract_signature(const ContractSpec &spec);

// Branch order of the OR statement: user key first, then delegates, frozen.
std::vector<group::GroupElement> or_branches(const DesignatedPayload &p);
std::vector<group::GroupElement> or_branches(const AccountablePayload &p);

}  // namespace otds::contracts
