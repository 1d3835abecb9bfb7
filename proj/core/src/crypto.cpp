#include "nacksim/crypto.hpp"

namespace nacksim {

KeyPair make_keypair(std::uint64_t seed) {
    KeyPair kp;
    kp.private_key = digest_bytes(sha256("priv:" + std::to_string(seed)));
    kp.public_key = digest_bytes(sha256("pub:" + kp.private_key));
    kp.digest = sha256(kp.public_key);
    return kp;
}

ContentObject sign_content(ContentObject obj, const KeyPair& key) {
    obj.producer_key = key.public_key;
    obj.signature = hmac_sha256(key.public_key, signing_input(obj));
    return obj;
}

bool verify_content(const ContentObject& obj) {
    if (obj.producer_key.empty())
        return false;
    return obj.signature == hmac_sha256(obj.producer_key, signing_input(obj));
}

bool verify_ikb(const Interest& interest, const ContentObject& obj) {
    if (!interest.key_digest)
        return false;
    if (sha256(obj.producer_key) != *interest.key_digest)
        return false;
    return verify_content(obj);
}

Digest content_hash(const ContentObject& obj) { return sha256(encode(obj, std::size_t(-1))); }

ScnResult verify_scn(const Interest& interest, const ContentObject& obj) {
    if (!interest.scn_hash)
        return ScnResult::NotApplicable;
    return content_hash(obj) == *interest.scn_hash ? ScnResult::Match : ScnResult::Miss;
}

FNack mac_fnack(FNack fnack, const LinkKey& key) {
    fnack.auth_tag = hmac_sha256(key.secret, mac_input(fnack));
    return fnack;
}

bool verify_fnack(const FNack& fnack, const LinkKey& key, SimTime now, TimeWindow window) {
    if (fnack.auth_tag != hmac_sha256(key.secret, mac_input(fnack)))
        return false;
    SimTime delta = fnack.timestamp > now ? fnack.timestamp - now : now - fnack.timestamp;
    return delta <= window.width;
}

bool check_cnack_times(const ContentObject& obj, SimTime now, TimeWindow window,
                       SimTime clock_skew_allowance) {
    if (obj.timestamp < now - window.width || obj.timestamp > now + clock_skew_allowance)
        return false;
    if (obj.expiration && now >= *obj.expiration)
        return false;
    return true;
}

void KeyRegistry::add(const Name& prefix, KeyPair key) {
    by_prefix_[prefix.to_key()] = {prefix, std::move(key)};
}

const KeyPair* KeyRegistry::lookup(const Name& name) const {
    const KeyPair* best = nullptr;
    std::size_t best_depth = 0;
    for (const auto& [k, entry] : by_prefix_) {
        if (is_prefix_of(entry.first, name) && entry.first.depth() + 1 > best_depth) {
            best = &entry.second;
            best_depth = entry.first.depth() + 1;
        }
    }
    return best;
}

const KeyPair* KeyRegistry::exact(const Name& prefix) const {
    auto it = by_prefix_.find(prefix.to_key());
    return it == by_prefix_.end() ? nullptr : &it->second.second;
}

} // namespace nacksim
