#pragma once

#include "otds/bytes.hpp"

namespace otds::ledger {

// Position of a block in the simulated chain; the hash chains to the
// predecessor, so a ref pins one block in one history.
struct BlockRef {
    std::uint64_t height = 0;
    Hash32 block_hash{};

    bool operator==(const BlockRef &) const = default;

    Bytes encode() const {
        Bytes out;
        put_u64le(out, height);
        put_bytes(out, block_hash);
        return out;
    }

    static BlockRef read(ByteReader &r) {
        BlockRef ref;
        ref.height = r.u64le();
        ref.block_hash = r.hash32();
        return ref;
    }
};

}  // namespace otds::ledger
