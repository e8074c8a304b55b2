#include "otds/hash.hpp"

#include <sodium.h>

namespace otds {

Hash32 sha256(std::initializer_list<std::span<const std::uint8_t>> parts) {
    crypto_hash_sha256_state st;
    crypto_hash_sha256_init(&st);
    for (auto part : parts) crypto_hash_sha256_update(&st, part.data(), part.size());
    Hash32 out{};
    crypto_hash_sha256_final(&st, out.data());
    return out;
}

Hash32 sha256(std::span<const std::uint8_t> data) { return sha256({data}); }

}  // namespace otds
