#pragma once

#include <stdexcept>

#include "nacksim/packet.hpp"

namespace nacksim {

struct CodecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical byte encoding. Deterministic, self-delimiting, and the exact
// signing/MAC input when the signature/auth_tag field is zeroed.
//
// All integers are big-endian fixed width. Layout:
//   name          := u16 count, count * (u32 len, bytes), u8 has_digest [, 32B]
//   Interest      := 'I', name, u8 has_key_digest [, 32B], u8 has_scn [, 32B],
//                    u64 lifetime_us, u32 origin_face
//   ContentObject := 'C', name, u8 type, u32 payload_len, payload,
//                    u64 freshness_us, i64 timestamp_us,
//                    u8 has_expiration [, i64], u32 key_len, key, 32B signature
//   FNack         := 'F', name, u8 reason, i64 timestamp_us, 32B auth_tag

inline constexpr std::size_t kDefaultMaxSegment = 8192;

Bytes encode_name(const Name& name);
Bytes encode(const Interest& p);
// BLM-FLTR objects must fit a single content segment; anything larger throws.
Bytes encode(const ContentObject& p, std::size_t max_segment = kDefaultMaxSegment);
Bytes encode(const FNack& p);
Bytes encode(const Packet& p, std::size_t max_segment = kDefaultMaxSegment);

// Encodings used as signing / MAC inputs (signature or auth_tag zeroed).
Bytes signing_input(const ContentObject& p);
Bytes mac_input(const FNack& p);

Packet decode(const Bytes& wire);

} // namespace nacksim
