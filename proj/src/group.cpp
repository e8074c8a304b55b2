#include "otds/group.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

#include "otds/errors.hpp"
#include "otds/hash.hpp"

namespace otds::group {

namespace {

// Group order of ristretto255: 2^252 + 27742317777372353535851937790883648493,
// little-endian.
constexpr std::uint8_t kRistrettoOrder[32] = {
    0xed, 0xd3, 0xf5, 0x5c, 0x1a, 0x63, 0x12, 0x58, 0xd6, 0x9c, 0xf7,
    0xa2, 0xde, 0xf9, 0xde, 0x14, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
    0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x10};

void ensure_sodium() {
    static const bool ok = (sodium_init() >= 0);
    if (!ok) throw std::runtime_error("sodium_init failed");
}

void check_same(Backend a, Backend b) {
    if (a != b) throw std::invalid_argument("mixed group backends");
}

std::uint64_t toy_modmul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (a * b) % m;  // operands < 2^16, no overflow
}

std::uint64_t toy_modpow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t acc = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) acc = toy_modmul(acc, base, m);
        base = toy_modmul(base, base, m);
        exp >>= 1;
    }
    return acc;
}

bool toy_is_member(std::uint64_t v) {
    // QR(p) is exactly the order-q subgroup for p = 2q+1.
    return v >= 1 && v < kToyP && toy_modpow(v, kToyQ, kToyP) == 1;
}

Scalar wide_scalar(const std::uint8_t le[32]) {
    std::array<std::uint8_t, 32> a{};
    std::memcpy(a.data(), le, 32);
    return Scalar::production(a);
}

}  // namespace

GroupParams par_gen(Backend backend) {
    if (backend == Backend::Production) ensure_sodium();
    return GroupParams{backend};
}

Bytes GroupParams::encode() const {
    Bytes out;
    put_u8(out, static_cast<std::uint8_t>(backend));
    if (backend == Backend::Toy) {
        put_u16be(out, static_cast<std::uint16_t>(kToyQ));
    } else {
        put_bytes(out, std::span<const std::uint8_t>(kRistrettoOrder, 32));
    }
    put_bytes(out, element_encode(generator(backend)));
    return out;
}

std::size_t scalar_size(Backend b) { return b == Backend::Toy ? 2 : 32; }
std::size_t element_size(Backend b) { return b == Backend::Toy ? 2 : 32; }

Scalar scalar_zero(Backend b) { return scalar_from_u64(b, 0); }

Scalar scalar_from_u64(Backend b, std::uint64_t v) {
    if (b == Backend::Toy) return Scalar::toy(v);
    ensure_sodium();
    std::uint8_t wide[64] = {0};
    for (int i = 0; i < 8; ++i) wide[i] = static_cast<std::uint8_t>((v >> (8 * i)) & 0xff);
    std::uint8_t out[32];
    crypto_core_ristretto255_scalar_reduce(out, wide);
    return wide_scalar(out);
}

Scalar scalar_add(const Scalar &a, const Scalar &b) {
    check_same(a.backend(), b.backend());
    if (a.backend() == Backend::Toy) return Scalar::toy(a.toy_value() + b.toy_value());
    std::uint8_t out[32];
    crypto_core_ristretto255_scalar_add(out, a.wide_value().data(), b.wide_value().data());
    return wide_scalar(out);
}

Scalar scalar_sub(const Scalar &a, const Scalar &b) {
    check_same(a.backend(), b.backend());
    if (a.backend() == Backend::Toy)
        return Scalar::toy(a.toy_value() + kToyQ - b.toy_value());
    std::uint8_t out[32];
    crypto_core_ristretto255_scalar_sub(out, a.wide_value().data(), b.wide_value().data());
    return wide_scalar(out);
}

Scalar scalar_mul(const Scalar &a, const Scalar &b) {
    check_same(a.backend(), b.backend());
    if (a.backend() == Backend::Toy)
        return Scalar::toy(toy_modmul(a.toy_value(), b.toy_value(), kToyQ));
    std::uint8_t out[32];
    crypto_core_ristretto255_scalar_mul(out, a.wide_value().data(), b.wide_value().data());
    return wide_scalar(out);
}

Scalar scalar_neg(const Scalar &a) {
    if (a.backend() == Backend::Toy) return Scalar::toy(kToyQ - a.toy_value());
    std::uint8_t out[32];
    crypto_core_ristretto255_scalar_negate(out, a.wide_value().data());
    return wide_scalar(out);
}

Scalar scalar_invert(const Scalar &a) {
    if (scalar_is_zero(a)) throw WitnessError("cannot invert zero scalar");
    if (a.backend() == Backend::Toy)
        return Scalar::toy(toy_modpow(a.toy_value(), kToyQ - 2, kToyQ));
    std::uint8_t out[32];
    if (crypto_core_ristretto255_scalar_invert(out, a.wide_value().data()) != 0)
        throw WitnessError("cannot invert zero scalar");
    return wide_scalar(out);
}

bool scalar_is_zero(const Scalar &a) {
    if (a.backend() == Backend::Toy) return a.toy_value() == 0;
    for (auto b : a.wide_value())
        if (b != 0) return false;
    return true;
}

GroupElement generator(Backend b) {
    if (b == Backend::Toy) return GroupElement::toy(kToyG);
    ensure_sodium();
    std::uint8_t one[32] = {1};
    std::array<std::uint8_t, 32> pt{};
    crypto_scalarmult_ristretto255_base(pt.data(), one);
    return GroupElement::production(pt);
}

GroupElement identity(Backend b) {
    if (b == Backend::Toy) return GroupElement::toy(1);
    return GroupElement::production({});  // all-zero encoding is the canonical identity
}

GroupElement scalar_mul(const Scalar &k, const GroupElement &p) {
    check_same(k.backend(), p.backend());
    if (k.backend() == Backend::Toy)
        return GroupElement::toy(toy_modpow(p.toy_value(), k.toy_value(), kToyP));
    if (scalar_is_zero(k) || p == identity(Backend::Production))
        return identity(Backend::Production);
    std::array<std::uint8_t, 32> out{};
    if (crypto_scalarmult_ristretto255(out.data(), k.wide_value().data(), p.point().data()) != 0)
        return identity(Backend::Production);  // k*p landed on the identity
    return GroupElement::production(out);
}

GroupElement element_add(const GroupElement &p, const GroupElement &q) {
    check_same(p.backend(), q.backend());
    if (p.backend() == Backend::Toy)
        return GroupElement::toy(toy_modmul(p.toy_value(), q.toy_value(), kToyP));
    std::array<std::uint8_t, 32> out{};
    if (crypto_core_ristretto255_add(out.data(), p.point().data(), q.point().data()) != 0)
        throw std::invalid_argument("invalid group element");
    return GroupElement::production(out);
}

GroupElement element_sub(const GroupElement &p, const GroupElement &q) {
    check_same(p.backend(), q.backend());
    if (p.backend() == Backend::Toy) {
        // inverse of q is q^(p-2) mod p
        std::uint64_t inv = toy_modpow(q.toy_value(), kToyP - 2, kToyP);
        return GroupElement::toy(toy_modmul(p.toy_value(), inv, kToyP));
    }
    std::array<std::uint8_t, 32> out{};
    if (crypto_core_ristretto255_sub(out.data(), p.point().data(), q.point().data()) != 0)
        throw std::invalid_argument("invalid group element");
    return GroupElement::production(out);
}

Scalar random_scalar(Backend b, Rng &rng) {
    if (b == Backend::Toy) {
        // rejection sampling for exact uniformity: 65216 = 1019 * 64
        for (;;) {
            std::uint8_t buf[2];
            rng.fill(buf);
            std::uint32_t v = (static_cast<std::uint32_t>(buf[0]) << 8) | buf[1];
            if (v < 65216) return Scalar::toy(v % kToyQ);
        }
    }
    ensure_sodium();
    std::uint8_t wide[64];
    rng.fill(wide);
    std::uint8_t out[32];
    crypto_core_ristretto255_scalar_reduce(out, wide);
    return wide_scalar(out);
}

Scalar hash_to_scalar(Backend b, std::string_view domain_tag, std::span<const std::uint8_t> data) {
    Hash32 digest = sha256({as_bytes(domain_tag), data});
    if (b == Backend::Toy) {
        // digest as big-endian integer mod q
        std::uint64_t acc = 0;
        for (std::uint8_t byte : digest) acc = (acc * 256 + byte) % kToyQ;
        return Scalar::toy(acc);
    }
    ensure_sodium();
    // big-endian digest -> little-endian 64-byte buffer, then reduce mod q
    std::uint8_t wide[64] = {0};
    for (int i = 0; i < 32; ++i) wide[i] = digest[static_cast<std::size_t>(31 - i)];
    std::uint8_t out[32];
    crypto_core_ristretto255_scalar_reduce(out, wide);
    return wide_scalar(out);
}

Bytes scalar_encode(const Scalar &s) {
    Bytes out;
    put_scalar(out, s);
    return out;
}

Scalar scalar_decode(Backend b, std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    Scalar s = read_scalar(b, r);
    r.expect_end();
    return s;
}

Bytes element_encode(const GroupElement &p) {
    Bytes out;
    put_element(out, p);
    return out;
}

GroupElement element_decode(Backend b, std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    GroupElement p = read_element(b, r);
    r.expect_end();
    return p;
}

void put_scalar(Bytes &out, const Scalar &s) {
    if (s.backend() == Backend::Toy) {
        put_u16be(out, static_cast<std::uint16_t>(s.toy_value()));
    } else {
        put_bytes(out, s.wide_value());
    }
}

void put_element(Bytes &out, const GroupElement &p) {
    if (p.backend() == Backend::Toy) {
        put_u16be(out, static_cast<std::uint16_t>(p.toy_value()));
    } else {
        put_bytes(out, p.point());
    }
}

Scalar read_scalar(Backend b, ByteReader &r) {
    if (b == Backend::Toy) {
        std::uint16_t v = r.u16be();
        if (v >= kToyQ) throw DecodeError("toy scalar out of range");
        return Scalar::toy(v);
    }
    ensure_sodium();
    auto raw = r.take(32);
    std::uint8_t wide[64] = {0};
    std::memcpy(wide, raw.data(), 32);
    std::uint8_t reduced[32];
    crypto_core_ristretto255_scalar_reduce(reduced, wide);
    if (std::memcmp(reduced, raw.data(), 32) != 0)
        throw DecodeError("non-canonical scalar encoding");
    return wide_scalar(reduced);
}

GroupElement read_element(Backend b, ByteReader &r) {
    if (b == Backend::Toy) {
        std::uint16_t v = r.u16be();
        if (!toy_is_member(v)) throw DecodeError("not a toy subgroup member");
        return GroupElement::toy(v);
    }
    ensure_sodium();
    auto raw = r.take(32);
    std::array<std::uint8_t, 32> pt{};
    std::memcpy(pt.data(), raw.data(), 32);
    bool is_identity = true;
    for (auto byte : pt)
        if (byte != 0) is_identity = false;
    if (!is_identity && crypto_core_ristretto255_is_valid_point(pt.data()) != 1)
        throw DecodeError("invalid ristretto point encoding");
    return GroupElement::production(pt);
}

}  // namespace otds::group
