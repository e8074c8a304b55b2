#include "otds/nizk.hpp"

#include "otds/errors.hpp"
#include "otds/hash.hpp"

namespace otds::nizk {

namespace g = otds::group;

namespace {

g::Scalar challenge_dlog(const g::GroupParams &pp, const DlogStatement &stmt,
                         const g::GroupElement &commitment, const BoundMsg &bound_msg) {
    Bytes transcript = pp.encode();
    put_bytes(transcript, stmt.encode());
    g::put_element(transcript, commitment);
    put_bytes(transcript, bound_msg);
    return g::hash_to_scalar(pp.backend, tags::kDlog, transcript);
}

g::Scalar challenge_or(const g::GroupParams &pp, const OrStatement &stmt,
                       const std::vector<OrBranch> &branches, const BoundMsg &bound_msg) {
    Bytes transcript = pp.encode();
    put_bytes(transcript, stmt.encode());
    for (const auto &b : branches) g::put_element(transcript, b.commitment);
    put_bytes(transcript, bound_msg);
    return g::hash_to_scalar(pp.backend, tags::kOr, transcript);
}

g::Scalar challenge_or_enc(const g::GroupParams &pp, const OrEncStatement &stmt,
                           const std::vector<OrEncBranch> &branches, const BoundMsg &bound_msg) {
    Bytes transcript = pp.encode();
    put_bytes(transcript, stmt.encode());
    for (const auto &b : branches) {
        g::put_element(transcript, b.a_y);
        g::put_element(transcript, b.a_c1);
        g::put_element(transcript, b.a_c2);
    }
    put_bytes(transcript, bound_msg);
    return g::hash_to_scalar(pp.backend, tags::kOrEnc, transcript);
}

std::uint32_t read_branch_count(ByteReader &r) {
    std::uint32_t k = r.u32le();
    if (k < 1 || k > 1024) throw DecodeError("implausible branch count");
    return k;
}

}  // namespace

// --- encodings ---

Bytes DlogStatement::encode() const {
    Bytes out;
    g::put_element(out, base);
    g::put_element(out, y);
    return out;
}

Bytes DlogProof::encode() const {
    Bytes out;
    put(out);
    return out;
}

void DlogProof::put(Bytes &out) const {
    g::put_element(out, commitment);
    g::put_scalar(out, c);
    g::put_scalar(out, s);
}

DlogProof DlogProof::read(g::Backend b, ByteReader &r) {
    DlogProof p;
    p.commitment = g::read_element(b, r);
    p.c = g::read_scalar(b, r);
    p.s = g::read_scalar(b, r);
    return p;
}

DlogProof DlogProof::decode(g::Backend b, std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    auto p = read(b, r);
    r.expect_end();
    return p;
}

Bytes OrStatement::encode() const {
    Bytes out;
    g::put_element(out, base);
    put_u32le(out, static_cast<std::uint32_t>(branches.size()));
    for (const auto &y : branches) g::put_element(out, y);
    return out;
}

Bytes OrProof::encode() const {
    Bytes out;
    put(out);
    return out;
}

void OrProof::put(Bytes &out) const {
    put_u32le(out, static_cast<std::uint32_t>(branches.size()));
    for (const auto &b : branches) {
        g::put_element(out, b.commitment);
        g::put_scalar(out, b.c);
        g::put_scalar(out, b.s);
    }
}

OrProof OrProof::read(g::Backend b, ByteReader &r) {
    OrProof p;
    std::uint32_t k = read_branch_count(r);
    p.branches.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i) {
        OrBranch br;
        br.commitment = g::read_element(b, r);
        br.c = g::read_scalar(b, r);
        br.s = g::read_scalar(b, r);
        p.branches.push_back(br);
    }
    return p;
}

OrProof OrProof::decode(g::Backend b, std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    auto p = read(b, r);
    r.expect_end();
    return p;
}

Bytes OrEncStatement::encode() const {
    Bytes out;
    g::put_element(out, base);
    put_u32le(out, static_cast<std::uint32_t>(branches.size()));
    for (const auto &y : branches) g::put_element(out, y);
    g::put_element(out, jpk);
    ct.put(out);
    return out;
}

Bytes OrEncProof::encode() const {
    Bytes out;
    put(out);
    return out;
}

void OrEncProof::put(Bytes &out) const {
    put_u32le(out, static_cast<std::uint32_t>(branches.size()));
    for (const auto &b : branches) {
        g::put_element(out, b.a_y);
        g::put_element(out, b.a_c1);
        g::put_element(out, b.a_c2);
        g::put_scalar(out, b.c);
        g::put_scalar(out, b.s_x);
        g::put_scalar(out, b.s_r);
    }
}

OrEncProof OrEncProof::read(g::Backend b, ByteReader &r) {
    OrEncProof p;
    std::uint32_t k = read_branch_count(r);
    p.branches.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i) {
        OrEncBranch br;
        br.a_y = g::read_element(b, r);
        br.a_c1 = g::read_element(b, r);
        br.a_c2 = g::read_element(b, r);
        br.c = g::read_scalar(b, r);
        br.s_x = g::read_scalar(b, r);
        br.s_r = g::read_scalar(b, r);
        p.branches.push_back(br);
    }
    return p;
}

OrEncProof OrEncProof::decode(g::Backend b, std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    auto p = read(b, r);
    r.expect_end();
    return p;
}

// --- discrete-log proof ---

DlogProof prove_dlog(const g::GroupParams &pp, const DlogStatement &stmt, const g::Scalar &x,
                     const BoundMsg &bound_msg, Rng &rng) {
    if (g::scalar_mul(x, stmt.base) != stmt.y) throw WitnessError("witness does not match statement");
    auto k = g::random_scalar(pp.backend, rng);
    DlogProof proof;
    proof.commitment = g::scalar_mul(k, stmt.base);
    proof.c = challenge_dlog(pp, stmt, proof.commitment, bound_msg);
    proof.s = g::scalar_add(k, g::scalar_mul(proof.c, x));
    return proof;
}

bool verify_dlog(const g::GroupParams &pp, const DlogStatement &stmt, const DlogProof &proof,
                 const BoundMsg &bound_msg) {
    if (proof.c != challenge_dlog(pp, stmt, proof.commitment, bound_msg)) return false;
    auto lhs = g::scalar_mul(proof.s, stmt.base);
    auto rhs = g::element_add(proof.commitment, g::scalar_mul(proof.c, stmt.y));
    return lhs == rhs;
}

DlogProof simulate_dlog(const DlogStatement &stmt, Rng &rng) {
    auto backend = stmt.base.backend();
    DlogProof proof;
    proof.c = g::random_scalar(backend, rng);
    proof.s = g::random_scalar(backend, rng);
    proof.commitment =
        g::element_sub(g::scalar_mul(proof.s, stmt.base), g::scalar_mul(proof.c, stmt.y));
    return proof;
}

group::Scalar extract_dlog(const DlogProof &t1, const DlogProof &t2) {
    if (t1.commitment != t2.commitment)
        throw WitnessError("transcripts do not share a commitment");
    auto dc = g::scalar_sub(t1.c, t2.c);
    if (g::scalar_is_zero(dc)) throw WitnessError("transcripts have equal challenges");
    auto ds = g::scalar_sub(t1.s, t2.s);
    return g::scalar_mul(ds, g::scalar_invert(dc));
}

// --- k-ary OR proof ---

OrProof prove_or(const g::GroupParams &pp, const OrStatement &stmt, std::size_t real_index,
                 const g::Scalar &x, const BoundMsg &bound_msg, Rng &rng) {
    if (real_index >= stmt.branches.size()) throw WitnessError("real_index out of range");
    if (g::scalar_mul(x, stmt.base) != stmt.branches[real_index])
        throw WitnessError("witness does not match statement branch");

    std::vector<OrBranch> branches(stmt.branches.size());
    // simulate every branch but the real one
    for (std::size_t i = 0; i < branches.size(); ++i) {
        if (i == real_index) continue;
        auto sim = simulate_dlog(DlogStatement{stmt.base, stmt.branches[i]}, rng);
        branches[i] = OrBranch{sim.commitment, sim.c, sim.s};
    }
    auto k = g::random_scalar(pp.backend, rng);
    branches[real_index].commitment = g::scalar_mul(k, stmt.base);

    auto master = challenge_or(pp, stmt, branches, bound_msg);
    auto c_real = master;
    for (std::size_t i = 0; i < branches.size(); ++i)
        if (i != real_index) c_real = g::scalar_sub(c_real, branches[i].c);
    branches[real_index].c = c_real;
    branches[real_index].s = g::scalar_add(k, g::scalar_mul(c_real, x));
    return OrProof{std::move(branches)};
}

bool verify_or(const g::GroupParams &pp, const OrStatement &stmt, const OrProof &proof,
               const BoundMsg &bound_msg) {
    if (proof.branches.size() != stmt.branches.size() || stmt.branches.empty()) return false;
    auto sum = g::scalar_zero(pp.backend);
    for (std::size_t i = 0; i < proof.branches.size(); ++i) {
        const auto &b = proof.branches[i];
        auto lhs = g::scalar_mul(b.s, stmt.base);
        auto rhs = g::element_add(b.commitment, g::scalar_mul(b.c, stmt.branches[i]));
        if (lhs != rhs) return false;
        sum = g::scalar_add(sum, b.c);
    }
    return sum == challenge_or(pp, stmt, proof.branches, bound_msg);
}

// --- OR of (dlog AND correct encryption) ---

namespace {

// Simulated AND branch: pick (c, s_x, s_r), back-solve the three commitments.
OrEncBranch simulate_enc_branch(const OrEncStatement &stmt, const g::GroupElement &y, Rng &rng) {
    auto backend = stmt.base.backend();
    OrEncBranch b;
    b.c = g::random_scalar(backend, rng);
    b.s_x = g::random_scalar(backend, rng);
    b.s_r = g::random_scalar(backend, rng);
    b.a_y = g::element_sub(g::scalar_mul(b.s_x, stmt.base), g::scalar_mul(b.c, y));
    b.a_c1 = g::element_sub(g::scalar_mul(b.s_r, stmt.base), g::scalar_mul(b.c, stmt.ct.c1));
    b.a_c2 = g::element_sub(
        g::element_add(g::scalar_mul(b.s_x, stmt.base), g::scalar_mul(b.s_r, stmt.jpk)),
        g::scalar_mul(b.c, stmt.ct.c2));
    return b;
}

}  // namespace

OrEncProof prove_or_enc(const g::GroupParams &pp, const OrEncStatement &stmt,
                        std::size_t real_index, const g::Scalar &x, const g::Scalar &r,
                        const BoundMsg &bound_msg, Rng &rng) {
    if (real_index >= stmt.branches.size()) throw WitnessError("real_index out of range");
    const auto &y = stmt.branches[real_index];
    if (g::scalar_mul(x, stmt.base) != y) throw WitnessError("witness does not match statement branch");
    if (encryption::eg_encrypt(stmt.jpk, y, r) != stmt.ct)
        throw WitnessError("ciphertext does not encrypt the real branch");

    std::vector<OrEncBranch> branches(stmt.branches.size());
    for (std::size_t i = 0; i < branches.size(); ++i) {
        if (i == real_index) continue;
        branches[i] = simulate_enc_branch(stmt, stmt.branches[i], rng);
    }
    auto k_x = g::random_scalar(pp.backend, rng);
    auto k_r = g::random_scalar(pp.backend, rng);
    auto &real = branches[real_index];
    real.a_y = g::scalar_mul(k_x, stmt.base);
    real.a_c1 = g::scalar_mul(k_r, stmt.base);
    real.a_c2 = g::element_add(g::scalar_mul(k_x, stmt.base), g::scalar_mul(k_r, stmt.jpk));

    auto master = challenge_or_enc(pp, stmt, branches, bound_msg);
    auto c_real = master;
    for (std::size_t i = 0; i < branches.size(); ++i)
        if (i != real_index) c_real = g::scalar_sub(c_real, branches[i].c);
    real.c = c_real;
    real.s_x = g::scalar_add(k_x, g::scalar_mul(c_real, x));
    real.s_r = g::scalar_add(k_r, g::scalar_mul(c_real, r));
    return OrEncProof{std::move(branches)};
}

bool verify_or_enc(const g::GroupParams &pp, const OrEncStatement &stmt, const OrEncProof &proof,
                   const BoundMsg &bound_msg) {
    if (proof.branches.size() != stmt.branches.size() || stmt.branches.empty()) return false;
    auto sum = g::scalar_zero(pp.backend);
    for (std::size_t i = 0; i < proof.branches.size(); ++i) {
        const auto &b = proof.branches[i];
        const auto &y = stmt.branches[i];
        // s_x*G = A_Y + c*Y_i
        if (g::scalar_mul(b.s_x, stmt.base) !=
            g::element_add(b.a_y, g::scalar_mul(b.c, y)))
            return false;
        // s_r*G = A_C1 + c*C1
        if (g::scalar_mul(b.s_r, stmt.base) !=
            g::element_add(b.a_c1, g::scalar_mul(b.c, stmt.ct.c1)))
            return false;
        // s_x*G + s_r*jpk = A_C2 + c*C2 — ties the encrypted value to the
        // branch whose discrete log is proven
        auto lhs = g::element_add(g::scalar_mul(b.s_x, stmt.base), g::scalar_mul(b.s_r, stmt.jpk));
        if (lhs != g::element_add(b.a_c2, g::scalar_mul(b.c, stmt.ct.c2))) return false;
        sum = g::scalar_add(sum, b.c);
    }
    return sum == challenge_or_enc(pp, stmt, proof.branches, bound_msg);
}

}  // namespace otds::nizk
