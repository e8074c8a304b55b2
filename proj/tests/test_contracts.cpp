#include <doctest.h>

#include "otds/contracts.hpp"
#include "otds/scheme.hpp"

using namespace otds;
namespace g = otds::group;
namespace c = otds::contracts;

namespace {

Hash32 hash_of(std::uint8_t fill) {
    Hash32 h{};
    h.fill(fill);
    return h;
}

ledger::BlockRef some_aux(std::uint8_t fill = 0xaa) {
    return ledger::BlockRef{3, hash_of(fill)};
}

struct BasicFixture {
    g::GroupParams pp;
    sigscheme::SigKeypair user_sig;
    g::Scalar esk;
    c::ContractSpec spec;
};

BasicFixture make_basic(g::Backend backend, Rng &rng, std::uint32_t n = 1) {
    BasicFixture fx{g::par_gen(backend), {}, {}, {}};
    fx.user_sig = sigscheme::sig_keygen(fx.pp, rng);
    fx.esk = g::random_scalar(backend, rng);
    fx.spec.payload = c::BasicPayload{g::scalar_mul(fx.esk, g::generator(backend))};
    fx.spec.n = n;
    fx.spec.upk_sig = fx.user_sig.pk;
    fx.spec.aux = some_aux();
    fx.spec.pp = fx.pp;
    fx.spec.tau = sigscheme::sig_sign(fx.user_sig.sk, fx.spec.signed_payload(), rng);
    return fx;
}

c::Trigger basic_trigger(const BasicFixture &fx, Hash32 h, Rng &rng) {
    auto gen = g::generator(fx.pp.backend);
    c::Trigger trig;
    trig.h = h;
    trig.proof = nizk::prove_dlog(
        fx.pp, nizk::DlogStatement{gen, std::get<c::BasicPayload>(fx.spec.payload).y}, fx.esk, h,
        rng);
    return trig;
}

struct DesignatedFixture {
    g::GroupParams pp;
    sigscheme::SigKeypair user_sig;
    g::Scalar usk_dl;
    std::vector<g::Scalar> delegate_sks;
    c::ContractSpec spec;
};

DesignatedFixture make_designated(g::Backend backend, std::size_t k, std::uint32_t n, Rng &rng) {
    DesignatedFixture fx{g::par_gen(backend), {}, {}, {}, {}};
    auto gen = g::generator(backend);
    fx.user_sig = sigscheme::sig_keygen(fx.pp, rng);
    fx.usk_dl = g::random_scalar(backend, rng);
    c::DesignatedPayload payload;
    payload.upk_dl = g::scalar_mul(fx.usk_dl, gen);
    for (std::size_t i = 0; i < k; ++i) {
        fx.delegate_sks.push_back(g::random_scalar(backend, rng));
        payload.delegate_keys.push_back(g::scalar_mul(fx.delegate_sks.back(), gen));
    }
    fx.spec.payload = payload;
    fx.spec.n = n;
    fx.spec.upk_sig = fx.user_sig.pk;
    fx.spec.aux = some_aux();
    fx.spec.pp = fx.pp;
    fx.spec.tau = sigscheme::sig_sign(fx.user_sig.sk, fx.spec.signed_payload(), rng);
    return fx;
}

c::Trigger designated_trigger(const DesignatedFixture &fx, std::size_t branch,
                              const g::Scalar &witness, Hash32 h, Rng &rng) {
    auto gen = g::generator(fx.pp.backend);
    auto branches = c::or_branches(std::get<c::DesignatedPayload>(fx.spec.payload));
    c::Trigger trig;
    trig.h = h;
    trig.proof = nizk::prove_or(fx.pp, nizk::OrStatement{gen, branches}, branch, witness, h, rng);
    return trig;
}

}  // namespace

TEST_CASE("basic contract: honest trigger locks the hash, second one is refused") {
    Rng rng(1);
    auto fx = make_basic(g::Backend::Toy, rng);
    auto trig = basic_trigger(fx, hash_of(1), rng);

    auto r1 = c::evaluate(fx.spec, {}, trig);
    CHECK(r1.status == c::TriggerStatus::Accepted);
    CHECK(r1.state.hashes == std::vector<Hash32>{hash_of(1)});

    // even a fresh valid proof for the same h is refused once st is full
    auto trig2 = basic_trigger(fx, hash_of(1), rng);
    auto r2 = c::evaluate(fx.spec, r1.state, trig2);
    CHECK(r2.status == c::TriggerStatus::ContractConsumed);
    CHECK(r2.state == r1.state);
}

TEST_CASE("basic contract rejects an invalid proof and leaves state unchanged") {
    Rng rng(2);
    auto fx = make_basic(g::Backend::Toy, rng);
    auto trig = basic_trigger(fx, hash_of(1), rng);
    trig.h = hash_of(2);  // proof was bound to a different h
    auto r = c::evaluate(fx.spec, {}, trig);
    CHECK(r.status == c::TriggerStatus::InvalidProof);
    CHECK(r.state.hashes.empty());
}

TEST_CASE("designated n=3 accepts exactly three triggers") {
    Rng rng(3);
    auto fx = make_designated(g::Backend::Toy, 2, 3, rng);
    c::ContractState state;
    for (int i = 0; i < 3; ++i) {
        auto trig = designated_trigger(fx, 1, fx.delegate_sks[0], hash_of(std::uint8_t(i)), rng);
        auto r = c::evaluate(fx.spec, state, trig);
        CHECK(r.status == c::TriggerStatus::Accepted);
        CHECK(r.state.hashes.size() == state.hashes.size() + 1);
        state = r.state;
    }
    auto trig = designated_trigger(fx, 0, fx.usk_dl, hash_of(9), rng);
    auto r = c::evaluate(fx.spec, state, trig);
    CHECK(r.status == c::TriggerStatus::ContractConsumed);
}

TEST_CASE("multi-delegate sweep: any listed key works, outsiders fail") {
    for (std::size_t k : {1u, 2u, 3u}) {
        Rng rng(10 + k);
        auto fx = make_designated(g::Backend::Toy, k, 1, rng);
        // every listed delegate and the user can trigger
        for (std::size_t i = 0; i <= k; ++i) {
            auto witness = i == 0 ? fx.usk_dl : fx.delegate_sks[i - 1];
            auto trig = designated_trigger(fx, i, witness, hash_of(7), rng);
            CHECK(c::evaluate(fx.spec, {}, trig).status == c::TriggerStatus::Accepted);
        }
        // a key outside the list cannot produce a proof for any branch
        auto outsider = g::random_scalar(fx.pp.backend, rng);
        auto gen = g::generator(fx.pp.backend);
        auto branches = c::or_branches(std::get<c::DesignatedPayload>(fx.spec.payload));
        for (std::size_t i = 0; i <= k; ++i) {
            CHECK_THROWS_AS(nizk::prove_or(fx.pp, nizk::OrStatement{gen, branches}, i, outsider,
                                           hash_of(7), rng),
                            WitnessError);
        }
    }
}

TEST_CASE("proof flavor must match the contract variant") {
    Rng rng(4);
    auto basic = make_basic(g::Backend::Toy, rng);
    auto designated = make_designated(g::Backend::Toy, 1, 1, rng);

    auto dlog_trig = basic_trigger(basic, hash_of(1), rng);
    CHECK(c::evaluate(designated.spec, {}, dlog_trig).status == c::TriggerStatus::FlavorMismatch);

    auto or_trig = designated_trigger(designated, 0, designated.usk_dl, hash_of(1), rng);
    CHECK(c::evaluate(basic.spec, {}, or_trig).status == c::TriggerStatus::FlavorMismatch);
}

TEST_CASE("accountable contract stores the ciphertext and requires one") {
    Rng rng(5);
    auto backend = g::Backend::Toy;
    auto pp = g::par_gen(backend);
    auto gen = g::generator(backend);
    auto user_sig = sigscheme::sig_keygen(pp, rng);
    auto usk_dl = g::random_scalar(backend, rng);
    auto dsk = g::random_scalar(backend, rng);
    auto judge = encryption::eg_keygen(pp, rng);

    c::AccountablePayload payload{g::scalar_mul(usk_dl, gen), {g::scalar_mul(dsk, gen)},
                                  judge.jpk};
    c::ContractSpec spec;
    spec.payload = payload;
    spec.n = 1;
    spec.upk_sig = user_sig.pk;
    spec.aux = some_aux();
    spec.pp = pp;
    spec.tau = sigscheme::sig_sign(user_sig.sk, spec.signed_payload(), rng);

    auto branches = c::or_branches(payload);
    auto r = g::random_scalar(backend, rng);
    c::Trigger trig;
    trig.h = hash_of(6);
    trig.ct = encryption::eg_encrypt(judge.jpk, branches[1], r);
    nizk::OrEncStatement stmt{gen, branches, judge.jpk, *trig.ct};
    trig.proof = nizk::prove_or_enc(pp, stmt, 1, dsk, r, trig.h, rng);

    auto result = c::evaluate(spec, {}, trig);
    CHECK(result.status == c::TriggerStatus::Accepted);
    REQUIRE(result.state.ciphertexts.size() == 1);
    CHECK(encryption::eg_decrypt(judge.jsk, result.state.ciphertexts[0]) == branches[1]);

    auto no_ct = trig;
    no_ct.ct.reset();
    CHECK(c::evaluate(spec, {}, no_ct).status == c::TriggerStatus::InvalidProof);
}

TEST_CASE("evaluate is deterministic") {
    Rng rng(6);
    auto fx = make_basic(g::Backend::Toy, rng);
    auto trig = basic_trigger(fx, hash_of(3), rng);
    auto r1 = c::evaluate(fx.spec, {}, trig);
    auto r2 = c::evaluate(fx.spec, {}, trig);
    CHECK(r1.status == r2.status);
    CHECK(r1.state == r2.state);
}

TEST_CASE("check_contract_signature accepts honest specs and rejects retargeting") {
    for (auto backend : {g::Backend::Toy, g::Backend::Production}) {
        Rng rng(7);
        int bad_accepts = 0;
        for (int i = 0; i < 100; ++i) {
            auto fx = make_basic(backend, rng);
            CHECK(c::check_contract_signature(fx.spec));

            auto retargeted = fx.spec;
            retargeted.aux = ledger::BlockRef{fx.spec.aux.height + 1, hash_of(0x55)};
            if (c::check_contract_signature(retargeted)) ++bad_accepts;

            auto swapped_y = fx.spec;
            swapped_y.payload =
                c::BasicPayload{g::scalar_mul(g::random_scalar(backend, rng),
                                              g::generator(backend))};
            if (c::check_contract_signature(swapped_y)) ++bad_accepts;
        }
        CHECK(bad_accepts <= (backend == g::Backend::Toy ? 1 : 0));
    }
}

TEST_CASE("contract spec encoding round-trips") {
    for (auto backend : {g::Backend::Toy, g::Backend::Production}) {
        Rng rng(8);
        auto basic = make_basic(backend, rng, 2);
        CHECK(c::ContractSpec::decode(basic.spec.encode()) == basic.spec);
        auto designated = make_designated(backend, 3, 1, rng);
        CHECK(c::ContractSpec::decode(designated.spec.encode()) == designated.spec);

        auto trig = basic_trigger(basic, hash_of(2), rng);
        CHECK(c::Trigger::decode(backend, trig.encode()) == trig);
    }
}
