#pragma once

#include <cstdint>
#include <string_view>

#include "nacksim/bytes.hpp"

namespace nacksim {

Digest sha256(std::string_view data);
Digest hmac_sha256(std::string_view key, std::string_view data);

// Seed-mixing helper for deterministic per-node RNG substreams.
std::uint64_t mix_seed(std::uint64_t base, std::string_view tag);

} // namespace nacksim
