#include "nacksim/bloom.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "nacksim/codec.hpp"
#include "nacksim/hash.hpp"

namespace nacksim {

namespace {

std::pair<std::uint64_t, std::uint64_t> name_hashes(const Name& name, std::uint64_t seed) {
    Bytes input(reinterpret_cast<const char*>(&seed), sizeof(seed));
    input.append(encode_name(name));
    Digest d = sha256(input);
    std::uint64_t h1 = 0, h2 = 0;
    std::memcpy(&h1, d.data(), 8);
    std::memcpy(&h2, d.data() + 8, 8);
    return {h1, h2 | 1};
}

} // namespace

BloomFilter::BloomFilter(BloomParams params) : params_(params) {
    if (params_.m < 1)
        throw std::invalid_argument("bloom filter needs m >= 1");
    if (params_.k < 1)
        throw std::invalid_argument("bloom filter needs k >= 1");
    words_.assign((params_.m + 63) / 64, 0);
}

void BloomFilter::insert(const Name& name) {
    auto [h1, h2] = name_hashes(name, params_.seed);
    for (std::uint32_t i = 0; i < params_.k; ++i) {
        std::uint64_t pos = (h1 + i * h2) % params_.m;
        words_[pos >> 6] |= (std::uint64_t{1} << (pos & 63));
    }
    ++count_;
}

bool BloomFilter::query(const Name& name) const {
    auto [h1, h2] = name_hashes(name, params_.seed);
    for (std::uint32_t i = 0; i < params_.k; ++i) {
        std::uint64_t pos = (h1 + i * h2) % params_.m;
        if (!(words_[pos >> 6] & (std::uint64_t{1} << (pos & 63))))
            return false;
    }
    return true;
}

Bytes BloomFilter::serialize(const Name& producer_prefix) const {
    Bytes out;
    auto put_u64 = [&](std::uint64_t v) {
        for (int i = 7; i >= 0; --i)
            out.push_back(static_cast<char>(v >> (8 * i)));
    };
    put_u64(params_.m);
    out.push_back(static_cast<char>(params_.k >> 24));
    out.push_back(static_cast<char>(params_.k >> 16));
    out.push_back(static_cast<char>(params_.k >> 8));
    out.push_back(static_cast<char>(params_.k));
    put_u64(params_.seed);
    put_u64(count_);
    out.append(encode_name(producer_prefix));
    std::uint64_t nbytes = (params_.m + 7) / 8;
    for (std::uint64_t b = 0; b < nbytes; ++b) {
        std::uint64_t word = words_[b >> 3];
        out.push_back(static_cast<char>((word >> ((b & 7) * 8)) & 0xff));
    }
    return out;
}

std::pair<BloomFilter, Name> BloomFilter::deserialize(const Bytes& payload) {
    std::size_t pos = 0;
    auto need = [&](std::size_t n) {
        if (pos + n > payload.size())
            throw CodecError("truncated BLM-FLTR payload");
    };
    auto get_u64 = [&]() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v = (v << 8) | static_cast<std::uint8_t>(payload[pos + i]);
        pos += 8;
        return v;
    };
    BloomParams params;
    params.m = get_u64();
    need(4);
    params.k = 0;
    for (int i = 0; i < 4; ++i)
        params.k = (params.k << 8) | static_cast<std::uint8_t>(payload[pos + i]);
    pos += 4;
    params.seed = get_u64();
    std::uint64_t count = get_u64();

    // Name block: reuse the packet codec by framing it as a name.
    need(2);
    std::uint16_t ncomp = (static_cast<std::uint8_t>(payload[pos]) << 8) |
                          static_cast<std::uint8_t>(payload[pos + 1]);
    pos += 2;
    Name prefix;
    for (std::uint16_t i = 0; i < ncomp; ++i) {
        need(4);
        std::uint32_t len = 0;
        for (int j = 0; j < 4; ++j)
            len = (len << 8) | static_cast<std::uint8_t>(payload[pos + j]);
        pos += 4;
        need(len);
        prefix.components.push_back(payload.substr(pos, len));
        pos += len;
    }
    need(1);
    if (payload[pos++] != 0)
        throw CodecError("BLM-FLTR prefix must not carry a digest");

    BloomFilter filter(params);
    std::uint64_t nbytes = (params.m + 7) / 8;
    need(nbytes);
    for (std::uint64_t b = 0; b < nbytes; ++b)
        filter.words_[b >> 3] |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(payload[pos + b]))
                                 << ((b & 7) * 8);
    pos += nbytes;
    if (pos != payload.size())
        throw CodecError("trailing bytes in BLM-FLTR payload");
    filter.count_ = count;
    return {std::move(filter), std::move(prefix)};
}

double fp_exact(std::uint64_t m, std::uint64_t n, std::uint32_t k) {
    if (m < 1 || k < 1)
        throw std::invalid_argument("fp_exact needs m >= 1, k >= 1");
    if (n == 0)
        return 0.0;
    // (1 - 1/m)^{kn} via exponentials, stable for large kn.
    double inner = std::exp(static_cast<double>(k) * static_cast<double>(n) *
                            std::log1p(-1.0 / static_cast<double>(m)));
    return std::pow(1.0 - inner, static_cast<double>(k));
}

double fp_approx(std::uint64_t m, std::uint64_t n, std::uint32_t k) {
    if (m < 1 || k < 1)
        throw std::invalid_argument("fp_approx needs m >= 1, k >= 1");
    if (n == 0)
        return 0.0;
    double inner = std::exp(-static_cast<double>(k) * static_cast<double>(n) /
                            static_cast<double>(m));
    return std::pow(1.0 - inner, static_cast<double>(k));
}

double fp_optimal(std::uint64_t m, std::uint64_t n) {
    if (m < 1 || n < 1)
        throw std::invalid_argument("fp_optimal needs m >= 1, n >= 1");
    return std::pow(0.6185, static_cast<double>(m) / static_cast<double>(n));
}

std::uint32_t optimal_k(std::uint64_t m, std::uint64_t n, int k_max) {
    if (m < 1 || n < 1)
        throw std::invalid_argument("optimal_k needs m >= 1, n >= 1");
    double ideal = static_cast<double>(m) / static_cast<double>(n) * std::log(2.0);
    long long k = std::llround(ideal);
    k = std::clamp<long long>(k, 1, k_max);
    return static_cast<std::uint32_t>(k);
}

SimTime freshness_for(const std::vector<SimTime>& publish_events, SimTime tau, SimTime now,
                      SimTime cap) {
    if (tau <= 0)
        throw std::invalid_argument("freshness_for needs tau > 0");
    std::uint64_t in_window = 0;
    for (SimTime t : publish_events)
        if (t >= now - tau && t <= now)
            ++in_window;
    if (in_window == 0)
        return cap;
    return tau / static_cast<SimTime>(in_window);
}

} // namespace nacksim
