#include "otds/scheme.hpp"

#include <algorithm>

#include "otds/errors.hpp"
#include "otds/hash.hpp"

namespace otds::scheme {

namespace g = otds::group;

group::GroupParams par_gen(g::Backend backend) { return g::par_gen(backend); }

UserKeys ukgen(const g::GroupParams &pp, Rng &rng) {
    auto gen = g::generator(pp.backend);
    UserKeys keys;
    auto sig_pair = sigscheme::sig_keygen(pp, rng);
    keys.usk_sig = sig_pair.sk;
    keys.upk_sig = sig_pair.pk;
    keys.usk_dl = g::random_scalar(pp.backend, rng);
    keys.upk_dl = g::scalar_mul(keys.usk_dl, gen);
    return keys;
}

DelegateKeys dkgen(const g::GroupParams &pp, Rng &rng) {
    DelegateKeys keys;
    keys.dsk = g::random_scalar(pp.backend, rng);
    keys.dpk = g::scalar_mul(keys.dsk, g::generator(pp.backend));
    return keys;
}

Hash32 message_hash(std::span<const std::uint8_t> msg, const std::optional<Hash32> &blinder) {
    if (blinder) return sha256({as_bytes(tags::kMsgHiding), *blinder, msg});
    return sha256({as_bytes(tags::kMsg), msg});
}

DelegationHandle delegate(ledger::Ledger &ledger, const UserKeys &user,
                          const VariantRequest &request, std::uint32_t n, Rng &rng) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    auto backend = user.usk_sig.backend();
    auto pp = g::par_gen(backend);

    DelegationHandle handle;
    handle.n = n;
    handle.pp = pp;

    switch (request.variant) {
        case contracts::Variant::Basic: {
            auto esk = g::random_scalar(backend, rng);
            handle.esk = esk;
            handle.payload =
                contracts::BasicPayload{g::scalar_mul(esk, g::generator(backend))};
            break;
        }
        case contracts::Variant::Designated: {
            if (request.delegate_pks.empty())
                throw std::invalid_argument("designated delegation needs delegate keys");
            handle.payload = contracts::DesignatedPayload{user.upk_dl, request.delegate_pks};
            break;
        }
        case contracts::Variant::Accountable: {
            if (request.delegate_pks.empty())
                throw std::invalid_argument("accountable delegation needs delegate keys");
            if (!request.jpk)
                throw std::invalid_argument("accountable delegation needs a judge key");
            handle.payload =
                contracts::AccountablePayload{user.upk_dl, request.delegate_pks, *request.jpk};
            break;
        }
    }

    // reserve the aux block, then sign, then deploy into the next block
    contracts::ContractSpec spec;
    spec.payload = handle.payload;
    spec.n = n;
    spec.upk_sig = user.upk_sig;
    spec.pp = pp;
    spec.aux = ledger.advance_block();
    spec.tau = sigscheme::sig_sign(user.usk_sig, spec.signed_payload(), rng);

    handle.contract_id = ledger.deploy_contract(spec);
    return handle;
}

namespace {

std::pair<MessageSignature, contracts::Trigger> make_trigger(
    const DelegationHandle &handle, const g::Scalar &witness, const g::GroupElement &signer_pk,
    std::span<const std::uint8_t> msg, bool hiding, Rng &rng) {
    auto backend = handle.pp.backend;
    auto gen = g::generator(backend);

    MessageSignature sig;
    if (hiding) sig.sigma = rng.bytes32();
    sig.h = message_hash(msg, sig.sigma);

    contracts::Trigger trig;
    trig.h = sig.h;

    switch (contracts::variant_of(handle.payload)) {
        case contracts::Variant::Basic: {
            const auto &p = std::get<contracts::BasicPayload>(handle.payload);
            trig.proof =
                nizk::prove_dlog(handle.pp, nizk::DlogStatement{gen, p.y}, witness, sig.h, rng);
            break;
        }
        case contracts::Variant::Designated: {
            const auto &p = std::get<contracts::DesignatedPayload>(handle.payload);
            auto branches = contracts::or_branches(p);
            auto it = std::find(branches.begin(), branches.end(), signer_pk);
            if (it == branches.end())
                throw WitnessError("signer key is not in the contract's key list");
            auto index = static_cast<std::size_t>(it - branches.begin());
            trig.proof = nizk::prove_or(handle.pp, nizk::OrStatement{gen, std::move(branches)},
                                        index, witness, sig.h, rng);
            break;
        }
        case contracts::Variant::Accountable: {
            const auto &p = std::get<contracts::AccountablePayload>(handle.payload);
            auto branches = contracts::or_branches(p);
            auto it = std::find(branches.begin(), branches.end(), signer_pk);
            if (it == branches.end())
                throw WitnessError("signer key is not in the contract's key list");
            auto index = static_cast<std::size_t>(it - branches.begin());
            auto enc_rand = g::random_scalar(backend, rng);
            trig.ct = encryption::eg_encrypt(p.jpk, signer_pk, enc_rand);
            nizk::OrEncStatement stmt{gen, std::move(branches), p.jpk, *trig.ct};
            trig.proof =
                nizk::prove_or_enc(handle.pp, stmt, index, witness, enc_rand, sig.h, rng);
            break;
        }
    }
    return {sig, trig};
}

}  // namespace

std::pair<MessageSignature, contracts::Trigger> dsign(const DelegationHandle &handle,
                                                      const DelegateKeys &delegate,
                                                      std::span<const std::uint8_t> msg,
                                                      bool hiding, Rng &rng) {
    if (contracts::variant_of(handle.payload) == contracts::Variant::Basic) {
        if (!handle.esk) throw std::invalid_argument("basic delegation handle is missing esk");
        return make_trigger(handle, *handle.esk, {}, msg, hiding, rng);
    }
    return make_trigger(handle, delegate.dsk, delegate.dpk, msg, hiding, rng);
}

std::pair<MessageSignature, contracts::Trigger> usign(const DelegationHandle &handle,
                                                      const UserKeys &user,
                                                      std::span<const std::uint8_t> msg,
                                                      bool hiding, Rng &rng) {
    if (contracts::variant_of(handle.payload) == contracts::Variant::Basic) {
        if (!handle.esk) throw std::invalid_argument("basic delegation handle is missing esk");
        return make_trigger(handle, *handle.esk, {}, msg, hiding, rng);
    }
    return make_trigger(handle, user.usk_dl, user.upk_dl, msg, hiding, rng);
}

ledger::SubmitResult bc_update(ledger::Ledger &ledger, const DelegationHandle &handle,
                               const contracts::Trigger &trig) {
    return ledger.submit_trigger(handle.contract_id, trig);
}

bool verify(const ledger::Ledger &ledger, const g::GroupElement &upk_sig,
            std::span<const std::uint8_t> msg, const MessageSignature &sig,
            const ledger::ContractId &contract_id) {
    const auto *record = ledger.get_contract(contract_id);
    if (record == nullptr) return false;

    // tau must verify under the caller-supplied key
    if (!sigscheme::sig_verify(upk_sig, record->spec.signed_payload(), record->spec.tau))
        return false;

    // aux must name the block actually preceding the inclusion block
    const auto &blocks = ledger.blocks();
    const auto &aux = record->aux_ref;
    if (aux.height >= blocks.size() || blocks[aux.height].block_hash != aux.block_hash)
        return false;
    if (record->inclusion_ref.height != aux.height + 1) return false;

    Hash32 h = message_hash(msg, sig.sigma);
    if (h != sig.h) return false;
    const auto &hashes = record->state.hashes;
    return std::find(hashes.begin(), hashes.end(), h) != hashes.end();
}

std::vector<group::GroupElement> judge_open(const encryption::JudgeKeys &judge,
                                            const ledger::ContractRecord &record) {
    if (contracts::variant_of(record.spec.payload) != contracts::Variant::Accountable)
        throw UnsupportedVariant("judge_open requires an accountable contract");
    std::vector<g::GroupElement> signers;
    signers.reserve(record.state.ciphertexts.size());
    for (const auto &ct : record.state.ciphertexts)
        signers.push_back(encryption::eg_decrypt(judge.jsk, ct));
    return signers;
}

}  // namespace otds::scheme
