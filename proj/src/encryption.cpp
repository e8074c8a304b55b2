#include "otds/encryption.hpp"

namespace otds::encryption {

namespace g = otds::group;

Bytes Ciphertext::encode() const {
    Bytes out;
    put(out);
    return out;
}

void Ciphertext::put(Bytes &out) const {
    g::put_element(out, c1);
    g::put_element(out, c2);
}

Ciphertext Ciphertext::read(g::Backend b, ByteReader &r) {
    Ciphertext ct;
    ct.c1 = g::read_element(b, r);
    ct.c2 = g::read_element(b, r);
    return ct;
}

Ciphertext Ciphertext::decode(g::Backend b, std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    auto ct = read(b, r);
    r.expect_end();
    return ct;
}

JudgeKeys eg_keygen(const g::GroupParams &pp, Rng &rng) {
    JudgeKeys keys;
    keys.jsk = g::random_scalar(pp.backend, rng);
    keys.jpk = g::scalar_mul(keys.jsk, g::generator(pp.backend));
    return keys;
}

Ciphertext eg_encrypt(const g::GroupElement &jpk, const g::GroupElement &m, const g::Scalar &r) {
    Ciphertext ct;
    ct.c1 = g::scalar_mul(r, g::generator(jpk.backend()));
    ct.c2 = g::element_add(m, g::scalar_mul(r, jpk));
    return ct;
}

g::GroupElement eg_decrypt(const g::Scalar &jsk, const Ciphertext &ct) {
    return g::element_sub(ct.c2, g::scalar_mul(jsk, ct.c1));
}

}  // namespace otds::encryption
