#pragma once

#include <optional>

#include "otds/ledger.hpp"

namespace otds::scheme {

// Two-part user key: a Schnorr signing pair certifying contracts and a
// discrete-log pair used on the user branch of OR proofs.
struct UserKeys {
    group::Scalar usk_sig;
    group::GroupElement upk_sig;
    group::Scalar usk_dl;
    group::GroupElement upk_dl;
};

struct DelegateKeys {
    group::Scalar dsk;
    group::GroupElement dpk;
};

// What the delegating user hands to the signer: the contract's address plus
// everything needed to build a trigger. Basic delegations additionally carry
// the one-time key esk.
struct DelegationHandle {
    std::optional<group::Scalar> esk;  // Basic only
    ledger::ContractId contract_id{};
    contracts::VariantPayload payload;
    std::uint32_t n = 1;
    group::GroupParams pp;
};

// sigma is the 32-byte blinder in hiding mode, absent otherwise; h is the
// hash locked into the contract state.
struct MessageSignature {
    std::optional<Hash32> sigma;
    Hash32 h{};
};

struct VariantRequest {
    contracts::Variant variant = contracts::Variant::Basic;
    std::vector<group::GroupElement> delegate_pks;  // Designated/Accountable
    std::optional<group::GroupElement> jpk;         // Accountable
};

group::GroupParams par_gen(group::Backend backend);

UserKeys ukgen(const group::GroupParams &pp, Rng &rng);
DelegateKeys dkgen(const group::GroupParams &pp, Rng &rng);

// Reserves a block, signs the contract payload, deploys. Throws
// std::invalid_argument on bad requests and DeployError from the ledger.
DelegationHandle delegate(ledger::Ledger &ledger, const UserKeys &user,
                          const VariantRequest &request, std::uint32_t n, Rng &rng);

std::pair<MessageSignature, contracts::Trigger> dsign(const DelegationHandle &handle,
                                                      const DelegateKeys &delegate,
                                                      std::span<const std::uint8_t> msg,
                                                      bool hiding, Rng &rng);

std::pair<MessageSignature, contracts::Trigger> usign(const DelegationHandle &handle,
                                                      const UserKeys &user,
                                                      std::span<const std::uint8_t> msg,
                                                      bool hiding, Rng &rng);

ledger::SubmitResult bc_update(ledger::Ledger &ledger, const DelegationHandle &handle,
                               const contracts::Trigger &trig);

bool verify(const ledger::Ledger &ledger, const group::GroupElement &upk_sig,
            std::span<const std::uint8_t> msg, const MessageSignature &sig,
            const ledger::ContractId &contract_id);

// Opens every stored ciphertext of an Accountable contract, yielding the
// public key whose holder produced each accepted trigger.
std::vector<group::GroupElement> judge_open(const encryption::JudgeKeys &judge,
                                            const ledger::ContractRecord &record);

// The hash a trigger commits to: plain H(msg) or blinded H(r, msg).
Hash32 message_hash(std::span<const std::uint8_t> msg, const std::optional<Hash32> &blinder);

}  // namespace otds::scheme
