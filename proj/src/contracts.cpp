#include "otds/contracts.hpp"

#include "otds/errors.hpp"

namespace otds::contracts {

namespace g = otds::group;

Variant variant_of(const VariantPayload &payload) {
    return static_cast<Variant>(payload.index());
}

namespace {

void put_key_list(Bytes &out, const std::vector<g::GroupElement> &keys) {
    put_u32le(out, static_cast<std::uint32_t>(keys.size()));
    for (const auto &k : keys) g::put_element(out, k);
}

std::vector<g::GroupElement> read_key_list(g::Backend b, ByteReader &r) {
    std::uint32_t k = r.u32le();
    if (k < 1 || k > 1024) throw DecodeError("implausible delegate key count");
    std::vector<g::GroupElement> keys;
    keys.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i) keys.push_back(g::read_element(b, r));
    return keys;
}

void put_variant_payload(Bytes &out, const VariantPayload &payload) {
    put_u8(out, static_cast<std::uint8_t>(variant_of(payload)));
    std::visit(
        [&out](const auto &p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BasicPayload>) {
                g::put_element(out, p.y);
            } else if constexpr (std::is_same_v<T, DesignatedPayload>) {
                g::put_element(out, p.upk_dl);
                put_key_list(out, p.delegate_keys);
            } else {
                g::put_element(out, p.upk_dl);
                put_key_list(out, p.delegate_keys);
                g::put_element(out, p.jpk);
            }
        },
        payload);
}

VariantPayload read_variant_payload(g::Backend b, ByteReader &r) {
    std::uint8_t tag = r.u8();
    switch (static_cast<Variant>(tag)) {
        case Variant::Basic:
            return BasicPayload{g::read_element(b, r)};
        case Variant::Designated: {
            DesignatedPayload p;
            p.upk_dl = g::read_element(b, r);
            p.delegate_keys = read_key_list(b, r);
            return p;
        }
        case Variant::Accountable: {
            AccountablePayload p;
            p.upk_dl = g::read_element(b, r);
            p.delegate_keys = read_key_list(b, r);
            p.jpk = g::read_element(b, r);
            return p;
        }
    }
    throw DecodeError("unknown contract variant");
}

}  // namespace

Bytes ContractSpec::signed_payload() const {
    Bytes out;
    put_variant_payload(out, payload);
    put_u32le(out, n);
    put_bytes(out, aux.encode());
    return out;
}

Bytes ContractSpec::encode() const {
    Bytes out = pp.encode();
    put_bytes(out, signed_payload());
    g::put_element(out, upk_sig);
    tau.put(out);
    return out;
}

ContractSpec ContractSpec::decode(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    ContractSpec spec;
    auto backend = static_cast<g::Backend>(r.u8());
    if (backend != g::Backend::Production && backend != g::Backend::Toy)
        throw DecodeError("unknown group backend");
    spec.pp = g::par_gen(backend);
    // re-check the fixed params encoding (order + generator)
    auto expected = spec.pp.encode();
    ByteReader check(expected);
    check.u8();
    auto rest = check.take(check.remaining());
    auto got = r.take(rest.size());
    if (!std::equal(rest.begin(), rest.end(), got.begin()))
        throw DecodeError("group parameter mismatch");
    spec.payload = read_variant_payload(backend, r);
    spec.n = r.u32le();
    if (spec.n < 1) throw DecodeError("contract n must be positive");
    spec.aux = ledger::BlockRef::read(r);
    spec.upk_sig = g::read_element(backend, r);
    spec.tau = sigscheme::SchnorrSignature::read(backend, r);
    r.expect_end();
    return spec;
}

Bytes Trigger::encode() const {
    Bytes out;
    put(out);
    return out;
}

void Trigger::put(Bytes &out) const {
    put_u8(out, static_cast<std::uint8_t>(proof.index()));
    std::visit([&out](const auto &p) { p.put(out); }, proof);
    put_bytes(out, h);
    if (proof.index() == 2) {
        if (!ct) throw std::logic_error("accountable trigger without ciphertext");
        ct->put(out);
    }
}

Trigger Trigger::read(g::Backend b, ByteReader &r) {
    Trigger trig;
    std::uint8_t flavor = r.u8();
    switch (flavor) {
        case 0:
            trig.proof = nizk::DlogProof::read(b, r);
            break;
        case 1:
            trig.proof = nizk::OrProof::read(b, r);
            break;
        case 2:
            trig.proof = nizk::OrEncProof::read(b, r);
            break;
        default:
            throw DecodeError("unknown proof flavor");
    }
    trig.h = r.hash32();
    if (flavor == 2) trig.ct = encryption::Ciphertext::read(b, r);
    return trig;
}

Trigger Trigger::decode(g::Backend b, std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    auto trig = read(b, r);
    r.expect_end();
    return trig;
}

const char *to_string(TriggerStatus status) {
    switch (status) {
        case TriggerStatus::Accepted: return "accepted";
        case TriggerStatus::UnknownContract: return "unknown contract";
        case TriggerStatus::ContractConsumed: return "contract consumed";
        case TriggerStatus::InvalidProof: return "invalid proof";
        case TriggerStatus::FlavorMismatch: return "proof flavor mismatch";
    }
    return "unknown status";
}

std::vector<g::GroupElement> or_branches(const DesignatedPayload &p) {
    std::vector<g::GroupElement> branches;
    branches.reserve(1 + p.delegate_keys.size());
    branches.push_back(p.upk_dl);
    branches.insert(branches.end(), p.delegate_keys.begin(), p.delegate_keys.end());
    return branches;
}

std::vector<g::GroupElement> or_branches(const AccountablePayload &p) {
    std::vector<g::GroupElement> branches;
    branches.reserve(1 + p.delegate_keys.size());
    branches.push_back(p.upk_dl);
    branches.insert(branches.end(), p.delegate_keys.begin(), p.delegate_keys.end());
    return branches;
}

EvalResult evaluate(const ContractSpec &spec, const ContractState &state, const Trigger &trig) {
    if (static_cast<std::size_t>(variant_of(spec.payload)) != trig.proof.index())
        return {TriggerStatus::FlavorMismatch, state};
    if (state.hashes.size() >= spec.n) return {TriggerStatus::ContractConsumed, state};

    auto gen = g::generator(spec.pp.backend);
    bool ok = false;
    switch (variant_of(spec.payload)) {
        case Variant::Basic: {
            const auto &p = std::get<BasicPayload>(spec.payload);
            ok = nizk::verify_dlog(spec.pp, nizk::DlogStatement{gen, p.y},
                                   std::get<nizk::DlogProof>(trig.proof), trig.h);
            break;
        }
        case Variant::Designated: {
            const auto &p = std::get<DesignatedPayload>(spec.payload);
            ok = nizk::verify_or(spec.pp, nizk::OrStatement{gen, or_branches(p)},
                                 std::get<nizk::OrProof>(trig.proof), trig.h);
            break;
        }
        case Variant::Accountable: {
            const auto &p = std::get<AccountablePayload>(spec.payload);
            if (!trig.ct) return {TriggerStatus::InvalidProof, state};
            nizk::OrEncStatement stmt{gen, or_branches(p), p.jpk, *trig.ct};
            ok = nizk::verify_or_enc(spec.pp, stmt, std::get<nizk::OrEncProof>(trig.proof),
                                     trig.h);
            break;
        }
    }
    if (!ok) return {TriggerStatus::InvalidProof, state};

    ContractState next = state;
    next.hashes.push_back(trig.h);
    if (trig.ct) next.ciphertexts.push_back(*trig.ct);
    return {TriggerStatus::Accepted, next};
}

bool check_contract_signature(const ContractSpec &spec) {
    return sigscheme::sig_verify(spec.upk_sig, spec.signed_payload(), spec.tau);
}

}  // namespace otds::contracts
