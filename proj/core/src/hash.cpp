#include "nacksim/hash.hpp"

#include <openssl/hmac.h>
#include <openssl/sha.h>

#include <cstring>

namespace nacksim {

Digest sha256(std::string_view data) {
    Digest out{};
    SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), out.data());
    return out;
}

Digest hmac_sha256(std::string_view key, std::string_view data) {
    Digest out{};
    unsigned int len = 0;
    HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()),
         reinterpret_cast<const unsigned char*>(data.data()), data.size(), out.data(), &len);
    return out;
}

std::uint64_t mix_seed(std::uint64_t base, std::string_view tag) {
    Bytes buf(reinterpret_cast<const char*>(&base), sizeof(base));
    buf.append(tag);
    Digest d = sha256(buf);
    std::uint64_t v = 0;
    std::memcpy(&v, d.data(), sizeof(v));
    return v;
}

std::string to_hex(const Digest& d) {
    static const char* hexd = "0123456789abcdef";
    std::string s;
    s.reserve(64);
    for (auto b : d) {
        s.push_back(hexd[b >> 4]);
        s.push_back(hexd[b & 0xf]);
    }
    return s;
}

} // namespace nacksim
