#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "otds/errors.hpp"

namespace otds {

using Bytes = std::vector<std::uint8_t>;
using Hash32 = std::array<std::uint8_t, 32>;

inline void put_u8(Bytes &out, std::uint8_t v) { out.push_back(v); }

inline void put_u16be(Bytes &out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

inline void put_u32le(Bytes &out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

inline void put_u64le(Bytes &out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

inline void put_bytes(Bytes &out, std::span<const std::uint8_t> data) {
    out.insert(out.end(), data.begin(), data.end());
}

inline void put_str(Bytes &out, std::string_view s) {
    out.insert(out.end(), s.begin(), s.end());
}

// Cursor over an immutable byte string; every getter throws DecodeError on underflow.
class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t u8() { return take(1)[0]; }

    std::uint16_t u16be() {
        auto b = take(2);
        return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
    }

    std::uint32_t u32le() {
        auto b = take(4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
        return v;
    }

    std::uint64_t u64le() {
        auto b = take(8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
        return v;
    }

    std::span<const std::uint8_t> take(std::size_t n) {
        if (n > data_.size() - pos_) throw DecodeError("truncated input");
        auto out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    Hash32 hash32() {
        Hash32 h{};
        auto b = take(32);
        std::copy(b.begin(), b.end(), h.begin());
        return h;
    }

    std::size_t remaining() const { return data_.size() - pos_; }

    void expect_end() const {
        if (pos_ != data_.size()) throw DecodeError("trailing bytes");
    }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

std::string to_hex(std::span<const std::uint8_t> data);
Bytes from_hex(std::string_view hex);  // throws DecodeError on odd length / non-hex / uppercase

}  // namespace otds
