#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace nacksim {

// Byte strings double as payloads and wire encodings.
using Bytes = std::string;

// All digests, key digests and auth tags in the simulator are 32 bytes.
using Digest = std::array<std::uint8_t, 32>;

std::string to_hex(const Digest& d);

inline Bytes digest_bytes(const Digest& d) {
    return Bytes(reinterpret_cast<const char*>(d.data()), d.size());
}

} // namespace nacksim
