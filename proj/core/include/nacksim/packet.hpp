#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "nacksim/bytes.hpp"
#include "nacksim/name.hpp"
#include "nacksim/time.hpp"

namespace nacksim {

using FaceId = std::uint32_t;
inline constexpr FaceId kNoFace = 0xffffffff;

enum class ContentType : std::uint8_t {
    Data = 0,
    Key = 1,
    Cnack = 2,
    BlmFltr = 3,
};

enum class FnackReason : std::uint8_t {
    NoRoute = 0,
    Congestion = 1,
};

const char* to_string(ContentType t);
const char* to_string(FnackReason r);

struct Interest {
    Name name;
    std::optional<Digest> key_digest;  // producer public-key digest (IKB)
    std::optional<Digest> scn_hash;    // expected content hash (SCN)
    SimTime lifetime = 4 * kUsPerSec;
    FaceId origin_face = kNoFace;      // simulator bookkeeping, set per hop

    bool operator==(const Interest& o) const = default;
};

struct ContentObject {
    Name name;
    Bytes payload;
    ContentType content_type = ContentType::Data;
    SimTime freshness = 0;
    SimTime timestamp = 0;
    std::optional<SimTime> expiration;
    Bytes producer_key;
    Digest signature{};   // over the canonical encoding with this field zeroed

    bool operator==(const ContentObject& o) const = default;
};

struct FNack {
    Name name;
    FnackReason reason = FnackReason::NoRoute;
    SimTime timestamp = 0;
    Digest auth_tag{};    // per-link keyed hash, over encoding with tag zeroed

    bool operator==(const FNack& o) const = default;
};

using Packet = std::variant<Interest, ContentObject, FNack>;

const Name& packet_name(const Packet& p);

} // namespace nacksim
