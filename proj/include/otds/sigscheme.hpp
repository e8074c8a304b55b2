#pragma once

#include "otds/group.hpp"
#include "otds/rng.hpp"

namespace otds::sigscheme {

struct SigKeypair {
    group::Scalar sk;
    group::GroupElement pk;  // sk * G
};

// Schnorr signature in (c, s) form; verification recomputes R' = s*G - c*pk.
struct SchnorrSignature {
    group::Scalar c;
    group::Scalar s;

    bool operator==(const SchnorrSignature &) const = default;

    Bytes encode() const;
    static SchnorrSignature decode(group::Backend b, std::span<const std::uint8_t> bytes);
    static SchnorrSignature read(group::Backend b, ByteReader &r);
    void put(Bytes &out) const;
};

SigKeypair sig_keygen(const group::GroupParams &pp, Rng &rng);

SchnorrSignature sig_sign(const group::Scalar &sk, std::span<const std::uint8_t> msg, Rng &rng);

bool sig_verify(const group::GroupElement &pk, std::span<const std::uint8_t> msg,
                const SchnorrSignature &sig);

}  // namespace otds::sigscheme
