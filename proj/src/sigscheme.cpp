#include "otds/sigscheme.hpp"

#include "otds/hash.hpp"

namespace otds::sigscheme {

namespace g = otds::group;

namespace {
g::Scalar challenge(const g::GroupElement &pk, const g::GroupElement &commitment,
                    std::span<const std::uint8_t> msg) {
    Bytes transcript;
    g::put_element(transcript, pk);
    g::put_element(transcript, commitment);
    put_bytes(transcript, msg);
    return g::hash_to_scalar(pk.backend(), tags::kSig, transcript);
}
}  // namespace

Bytes SchnorrSignature::encode() const {
    Bytes out;
    put(out);
    return out;
}

void SchnorrSignature::put(Bytes &out) const {
    g::put_scalar(out, c);
    g::put_scalar(out, s);
}

SchnorrSignature SchnorrSignature::read(g::Backend b, ByteReader &r) {
    SchnorrSignature sig;
    sig.c = g::read_scalar(b, r);
    sig.s = g::read_scalar(b, r);
    return sig;
}

SchnorrSignature SchnorrSignature::decode(g::Backend b, std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    auto sig = read(b, r);
    r.expect_end();
    return sig;
}

SigKeypair sig_keygen(const g::GroupParams &pp, Rng &rng) {
    SigKeypair kp;
    kp.sk = g::random_scalar(pp.backend, rng);
    kp.pk = g::scalar_mul(kp.sk, g::generator(pp.backend));
    return kp;
}

SchnorrSignature sig_sign(const g::Scalar &sk, std::span<const std::uint8_t> msg, Rng &rng) {
    auto backend = sk.backend();
    auto gen = g::generator(backend);
    auto pk = g::scalar_mul(sk, gen);
    auto k = g::random_scalar(backend, rng);
    auto commitment = g::scalar_mul(k, gen);
    SchnorrSignature sig;
    sig.c = challenge(pk, commitment, msg);
    sig.s = g::scalar_add(k, g::scalar_mul(sig.c, sk));
    return sig;
}

bool sig_verify(const g::GroupElement &pk, std::span<const std::uint8_t> msg,
                const SchnorrSignature &sig) {
    if (pk.backend() != sig.c.backend() || pk.backend() != sig.s.backend()) return false;
    auto gen = g::generator(pk.backend());
    // R' = s*G - c*pk
    auto commitment = g::element_sub(g::scalar_mul(sig.s, gen), g::scalar_mul(sig.c, pk));
    return challenge(pk, commitment, msg) == sig.c;
}

}  // namespace otds::sigscheme
