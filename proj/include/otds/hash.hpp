#pragma once

#include <initializer_list>
#include <span>
#include <string_view>

#include "otds/bytes.hpp"

namespace otds {

// SHA-256 of the concatenation of all parts.
Hash32 sha256(std::initializer_list<std::span<const std::uint8_t>> parts);
Hash32 sha256(std::span<const std::uint8_t> data);

// Domain-separation tags. Each hash invocation is prefixed by exactly one of
// these so transcripts can never be replayed across protocols.
namespace tags {
inline constexpr std::string_view kSig = "OTDS/v1/sig";
inline constexpr std::string_view kDlog = "OTDS/v1/dlog";
inline constexpr std::string_view kOr = "OTDS/v1/or";
inline constexpr std::string_view kOrEnc = "OTDS/v1/or-enc";
inline constexpr std::string_view kMsg = "OTDS/v1/msg";
inline constexpr std::string_view kMsgHiding = "OTDS/v1/msg-hiding";
}  // namespace tags

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t *>(s.data()), s.size()};
}

}  // namespace otds
