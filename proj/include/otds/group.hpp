#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "otds/bytes.hpp"
#include "otds/rng.hpp"

namespace otds::group {

// Two interchangeable backends behind one additive-group interface:
//   Production — ristretto255 (prime order ~2^252, 32-byte canonical encodings)
//   Toy        — quadratic residues mod p=2039 (q=1019, generator 4), small
//                enough for exhaustive brute-force oracles in tests.
enum class Backend : std::uint8_t { Production = 0, Toy = 1 };

inline constexpr std::uint64_t kToyP = 2039;  // p = 2q + 1
inline constexpr std::uint64_t kToyQ = 1019;
inline constexpr std::uint64_t kToyG = 4;

class Scalar {
public:
    Scalar() = default;

    Backend backend() const { return backend_; }
    std::uint64_t toy_value() const { return toy_; }
    const std::array<std::uint8_t, 32> &wide_value() const { return wide_; }

    bool operator==(const Scalar &) const = default;

    static Scalar toy(std::uint64_t v) {
        Scalar s;
        s.backend_ = Backend::Toy;
        s.toy_ = v % kToyQ;
        return s;
    }
    static Scalar production(const std::array<std::uint8_t, 32> &le_bytes) {
        Scalar s;
        s.backend_ = Backend::Production;
        s.wide_ = le_bytes;
        return s;
    }

private:
    Backend backend_ = Backend::Production;
    std::uint64_t toy_ = 0;                   // Toy: value in [0, q)
    std::array<std::uint8_t, 32> wide_{};     // Production: little-endian, reduced
};

class GroupElement {
public:
    GroupElement() = default;

    Backend backend() const { return backend_; }
    std::uint64_t toy_value() const { return toy_; }
    const std::array<std::uint8_t, 32> &point() const { return point_; }

    bool operator==(const GroupElement &) const = default;

    static GroupElement toy(std::uint64_t v) {
        GroupElement e;
        e.backend_ = Backend::Toy;
        e.toy_ = v;
        return e;
    }
    static GroupElement production(const std::array<std::uint8_t, 32> &pt) {
        GroupElement e;
        e.backend_ = Backend::Production;
        e.point_ = pt;
        return e;
    }

private:
    Backend backend_ = Backend::Production;
    std::uint64_t toy_ = 1;                   // Toy: residue in [1, p), member of QR(p)
    std::array<std::uint8_t, 32> point_{};    // Production: canonical ristretto encoding
};

struct GroupParams {
    Backend backend = Backend::Production;

    bool operator==(const GroupParams &) const = default;

    // Canonical encoding fed into every Fiat-Shamir transcript.
    Bytes encode() const;
};

GroupParams par_gen(Backend backend);

std::size_t scalar_size(Backend b);   // bytes per canonical scalar encoding
std::size_t element_size(Backend b);  // bytes per canonical element encoding

// --- scalar arithmetic mod q ---
Scalar scalar_zero(Backend b);
Scalar scalar_from_u64(Backend b, std::uint64_t v);
Scalar scalar_add(const Scalar &a, const Scalar &b);
Scalar scalar_sub(const Scalar &a, const Scalar &b);
Scalar scalar_mul(const Scalar &a, const Scalar &b);
Scalar scalar_neg(const Scalar &a);
Scalar scalar_invert(const Scalar &a);  // throws WitnessError on zero
bool scalar_is_zero(const Scalar &a);

// --- group operations ---
GroupElement generator(Backend b);
GroupElement identity(Backend b);
GroupElement scalar_mul(const Scalar &k, const GroupElement &p);
GroupElement element_add(const GroupElement &p, const GroupElement &q);
GroupElement element_sub(const GroupElement &p, const GroupElement &q);

// --- randomness and hashing into Z_q ---
Scalar random_scalar(Backend b, Rng &rng);
Scalar hash_to_scalar(Backend b, std::string_view domain_tag, std::span<const std::uint8_t> data);

// --- canonical encodings ---
Bytes scalar_encode(const Scalar &s);
Scalar scalar_decode(Backend b, std::span<const std::uint8_t> bytes);  // throws DecodeError
Bytes element_encode(const GroupElement &p);
GroupElement element_decode(Backend b, std::span<const std::uint8_t> bytes);  // throws DecodeError

void put_scalar(Bytes &out, const Scalar &s);
void put_element(Bytes &out, const GroupElement &p);
Scalar read_scalar(Backend b, ByteReader &r);
GroupElement read_element(Backend b, ByteReader &r);

}  // namespace otds::group
