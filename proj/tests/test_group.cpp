#include <doctest.h>

#include "oracles.hpp"
#include "otds/group.hpp"
#include "otds/errors.hpp"

using namespace otds;
namespace g = otds::group;

TEST_CASE("toy scalar_mul matches the modpow oracle on the spec vectors") {
    auto gen = g::generator(g::Backend::Toy);
    CHECK(g::scalar_mul(g::Scalar::toy(0), gen) == g::identity(g::Backend::Toy));
    CHECK(g::scalar_mul(g::Scalar::toy(2), gen).toy_value() == 16);
    CHECK(g::scalar_mul(g::Scalar::toy(6), gen).toy_value() == 18);
    // order of g is exactly q
    CHECK(g::scalar_mul(g::Scalar::toy(1019 % 1019), gen) == g::identity(g::Backend::Toy));
    for (std::uint64_t k = 1; k < oracle::kQ; ++k)
        CHECK(g::scalar_mul(g::Scalar::toy(k), gen) != g::identity(g::Backend::Toy));
}

TEST_CASE("toy scalar_mul full oracle sweep over all 1019 exponents") {
    auto gen = g::generator(g::Backend::Toy);
    for (std::uint64_t k = 0; k < oracle::kQ; ++k) {
        auto got = g::scalar_mul(g::Scalar::toy(k), gen).toy_value();
        CHECK(got == oracle::modpow(oracle::kG, k, oracle::kP));
    }
}

TEST_CASE("element_add laws") {
    auto p = g::GroupElement::toy(4);
    auto q = g::GroupElement::toy(16);
    CHECK(g::element_add(p, q).toy_value() == 64);

    for (auto backend : {g::Backend::Toy, g::Backend::Production}) {
        Rng rng(11);
        auto gen = g::generator(backend);
        auto x = g::random_scalar(backend, rng);
        auto e = g::scalar_mul(x, gen);
        CHECK(g::element_add(e, g::identity(backend)) == e);
        auto neg = g::scalar_mul(g::scalar_neg(g::scalar_from_u64(backend, 1)), e);
        CHECK(g::element_add(e, neg) == g::identity(backend));
    }
}

TEST_CASE("random_scalar determinism and range") {
    for (auto backend : {g::Backend::Toy, g::Backend::Production}) {
        Rng a(42), b(42), c(43);
        auto s1 = g::random_scalar(backend, a);
        auto s2 = g::random_scalar(backend, b);
        CHECK(s1 == s2);
        auto s3 = g::random_scalar(backend, c);
        CHECK((s1 == s3) == false);  // may collide on toy in principle; seeds chosen so it doesn't
    }
    Rng rng(7);
    for (int i = 0; i < 2000; ++i)
        CHECK(g::random_scalar(g::Backend::Toy, rng).toy_value() < g::kToyQ);
}

TEST_CASE("hash_to_scalar determinism, tag separation, golden vectors") {
    Bytes data{1, 2, 3};
    for (auto backend : {g::Backend::Toy, g::Backend::Production}) {
        auto h1 = g::hash_to_scalar(backend, "A", data);
        auto h2 = g::hash_to_scalar(backend, "A", data);
        auto h3 = g::hash_to_scalar(backend, "B", data);
        CHECK(h1 == h2);
        CHECK(h1 != h3);
    }
    // golden vectors frozen at first implementation (SHA-256 of tag||data, big-endian mod q)
    CHECK(g::hash_to_scalar(g::Backend::Toy, "A", data).toy_value() == 271);
    CHECK(g::hash_to_scalar(g::Backend::Toy, "B", data).toy_value() == 68);
    CHECK(to_hex(g::scalar_encode(g::hash_to_scalar(g::Backend::Production, "A", data))) ==
          "d92fd4913cfbcb700107cb84c7ff65b5da5edc34e17be815fb339a7808d02a08");
}

TEST_CASE("scalar homomorphism: (k1+k2)*G = k1*G + k2*G, 1000 random pairs") {
    for (auto backend : {g::Backend::Toy, g::Backend::Production}) {
        Rng rng(backend == g::Backend::Toy ? 1 : 2);
        auto gen = g::generator(backend);
        for (int i = 0; i < 1000; ++i) {
            auto k1 = g::random_scalar(backend, rng);
            auto k2 = g::random_scalar(backend, rng);
            auto lhs = g::scalar_mul(g::scalar_add(k1, k2), gen);
            auto rhs = g::element_add(g::scalar_mul(k1, gen), g::scalar_mul(k2, gen));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("encode/decode round-trip on 1000 random elements") {
    for (auto backend : {g::Backend::Toy, g::Backend::Production}) {
        Rng rng(5);
        auto gen = g::generator(backend);
        for (int i = 0; i < 1000; ++i) {
            auto e = g::scalar_mul(g::random_scalar(backend, rng), gen);
            CHECK(g::element_decode(backend, g::element_encode(e)) == e);
            auto s = g::random_scalar(backend, rng);
            CHECK(g::scalar_decode(backend, g::scalar_encode(s)) == s);
        }
    }
}

TEST_CASE("decode rejects non-canonical byte strings") {
    // toy: 0, non-residues, and out-of-range values
    CHECK_THROWS_AS(g::element_decode(g::Backend::Toy, Bytes{0x00, 0x00}), DecodeError);
    // p = 3 mod 4, so p-1 = 2038 is a non-residue
    CHECK_THROWS_AS(g::element_decode(g::Backend::Toy, Bytes{0x07, 0xf6}), DecodeError);
    CHECK_THROWS_AS(g::element_decode(g::Backend::Toy, Bytes{0xff, 0xff}), DecodeError);
    CHECK_THROWS_AS(g::scalar_decode(g::Backend::Toy, Bytes{0x03, 0xfb}), DecodeError);  // 1019
    CHECK_THROWS_AS(g::element_decode(g::Backend::Toy, Bytes{0x00}), DecodeError);

    // production: unreduced scalar (the group order itself) and a bad point
    Bytes order(32, 0);
    order[0] = 0xed; order[1] = 0xd3; order[2] = 0xf5; order[3] = 0x5c;
    order[4] = 0x1a; order[5] = 0x63; order[6] = 0x12; order[7] = 0x58;
    order[8] = 0xd6; order[9] = 0x9c; order[10] = 0xf7; order[11] = 0xa2;
    order[12] = 0xde; order[13] = 0xf9; order[14] = 0xde; order[15] = 0x14;
    order[31] = 0x10;
    CHECK_THROWS_AS(g::scalar_decode(g::Backend::Production, order), DecodeError);
    Bytes junk(32, 0xff);
    CHECK_THROWS_AS(g::element_decode(g::Backend::Production, junk), DecodeError);
}

TEST_CASE("par_gen is stable and generator round-trips") {
    for (auto backend : {g::Backend::Toy, g::Backend::Production}) {
        auto pp1 = g::par_gen(backend);
        auto pp2 = g::par_gen(backend);
        CHECK(pp1.encode() == pp2.encode());
        auto gen = g::generator(backend);
        CHECK(g::element_decode(backend, g::element_encode(gen)) == gen);
    }
    // toy parameters: q prime, p = 2q+1, generator of order exactly q
    CHECK(g::kToyP == 2 * g::kToyQ + 1);
    for (std::uint64_t d = 2; d * d <= oracle::kQ; ++d) CHECK(oracle::kQ % d != 0);
    CHECK(oracle::modpow(oracle::kG, oracle::kQ, oracle::kP) == 1);
}
