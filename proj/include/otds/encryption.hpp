#pragma once

#include "otds/group.hpp"
#include "otds/rng.hpp"

namespace otds::encryption {

struct JudgeKeys {
    group::Scalar jsk;
    group::GroupElement jpk;  // jsk * G
};

// ElGamal over group elements: (C1, C2) = (r*G, M + r*jpk).
struct Ciphertext {
    group::GroupElement c1;
    group::GroupElement c2;

    bool operator==(const Ciphertext &) const = default;

    Bytes encode() const;
    static Ciphertext decode(group::Backend b, std::span<const std::uint8_t> bytes);
    static Ciphertext read(group::Backend b, ByteReader &r);
    void put(Bytes &out) const;
};

JudgeKeys eg_keygen(const group::GroupParams &pp, Rng &rng);

Ciphertext eg_encrypt(const group::GroupElement &jpk, const group::GroupElement &m,
                      const group::Scalar &r);

group::GroupElement eg_decrypt(const group::Scalar &jsk, const Ciphertext &ct);

}  // namespace otds::encryption
