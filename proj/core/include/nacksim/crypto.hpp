#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "nacksim/codec.hpp"
#include "nacksim/hash.hpp"
#include "nacksim/packet.hpp"

namespace nacksim {

// Producer key pair. Signing is a deterministic keyed digest over the
// canonical encoding; a real asymmetric scheme sits behind the same interface
// in a deployment, and its cost is what the producer service model charges.
struct KeyPair {
    Bytes public_key;
    Bytes private_key;
    Digest digest{};  // = sha256(public_key)
};

KeyPair make_keypair(std::uint64_t seed);

// Symmetric per-link secret; both endpoints of a link hold the same value.
struct LinkKey {
    Bytes secret;
};

struct TimeWindow {
    SimTime width = 0;  // > 0
};

enum class ScnResult { Match, Miss, NotApplicable };

ContentObject sign_content(ContentObject obj, const KeyPair& key);
bool verify_content(const ContentObject& obj);

// IKB: key digest in the interest matches the embedded producer key, and the
// signature verifies under that key.
bool verify_ikb(const Interest& interest, const ContentObject& obj);

// SCN: hash of the received object equals the hash pinned in the interest.
// A Miss on a CNACK must be re-checked under verify_ikb by the caller.
ScnResult verify_scn(const Interest& interest, const ContentObject& obj);

Digest content_hash(const ContentObject& obj);

FNack mac_fnack(FNack fnack, const LinkKey& key);
bool verify_fnack(const FNack& fnack, const LinkKey& key, SimTime now, TimeWindow window);

// Timestamp-window and expiration check for CNACK objects.
bool check_cnack_times(const ContentObject& obj, SimTime now, TimeWindow window,
                       SimTime clock_skew_allowance = 0);

// Prefix -> key pair mapping loaded from the scenario; no certificate chains.
class KeyRegistry {
public:
    void add(const Name& prefix, KeyPair key);
    const KeyPair* lookup(const Name& name) const;  // longest matching prefix
    const KeyPair* exact(const Name& prefix) const;

private:
    std::map<std::string, std::pair<Name, KeyPair>> by_prefix_;
};

} // namespace nacksim
