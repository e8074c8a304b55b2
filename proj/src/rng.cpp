#include "otds/rng.hpp"

#include <sodium.h>

#include <cstring>

#include "otds/hash.hpp"

namespace otds {

Rng::Rng(std::uint64_t seed) {
    Bytes b;
    put_str(b, "OTDS/v1/rng-seed");
    put_u64le(b, seed);
    seed_ = sha256(b);
}

Rng Rng::from_entropy() {
    if (sodium_init() < 0) throw std::runtime_error("sodium_init failed");
    Hash32 seed{};
    randombytes_buf(seed.data(), seed.size());
    return Rng(seed);
}

void Rng::fill(std::span<std::uint8_t> out) {
    std::size_t pos = 0;
    while (pos < out.size()) {
        if (buf_used_ == 32) {
            Bytes block;
            put_bytes(block, seed_);
            put_u64le(block, counter_++);
            Hash32 h = sha256(block);
            std::memcpy(buf_, h.data(), 32);
            buf_used_ = 0;
        }
        std::size_t n = std::min(out.size() - pos, 32 - buf_used_);
        std::memcpy(out.data() + pos, buf_ + buf_used_, n);
        buf_used_ += n;
        pos += n;
    }
}

std::uint64_t Rng::next_u64() {
    std::uint8_t b[8];
    fill(b);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

Hash32 Rng::bytes32() {
    Hash32 h{};
    fill(h);
    return h;
}

}  // namespace otds
