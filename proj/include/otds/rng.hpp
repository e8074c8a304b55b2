#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "otds/bytes.hpp"

namespace otds {

// Deterministic byte stream: SHA-256 in counter mode over a 32-byte seed.
// Seeded instances reproduce the same stream forever; from_entropy() pulls the
// seed from the OS.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    explicit Rng(const Hash32 &seed) : seed_(seed) {}
    static Rng from_entropy();

    void fill(std::span<std::uint8_t> out);
    std::uint64_t next_u64();
    Hash32 bytes32();

private:
    Hash32 seed_{};
    std::uint64_t counter_ = 0;
    std::uint8_t buf_[32];
    std::size_t buf_used_ = 32;
};

}  // namespace otds
