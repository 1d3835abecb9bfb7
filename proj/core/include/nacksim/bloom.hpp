#pragma once

#include <cstdint>
#include <vector>

#include "nacksim/name.hpp"
#include "nacksim/time.hpp"

namespace nacksim {

inline constexpr int kDefaultKMax = 16;
inline constexpr SimTime kFreshnessCap = 3600 * kUsPerSec;

struct BloomParams {
    std::uint64_t m = 0;       // filter size in bits
    std::uint64_t n = 0;       // expected element count
    std::uint32_t k = 1;       // number of hash functions
    std::uint64_t seed = 0;
};

// Plain Bloom filter over published content names. Hash positions come from
// double hashing of two seed-derived digests of the name's canonical
// encoding, uniform over [0, m).
class BloomFilter {
public:
    explicit BloomFilter(BloomParams params);

    void insert(const Name& name);
    bool query(const Name& name) const;

    const BloomParams& params() const { return params_; }
    std::uint64_t count() const { return count_; }
    const std::vector<std::uint64_t>& words() const { return words_; }

    // BLM-FLTR payload: u64 m, u32 k, u64 seed, u64 count,
    // u16 prefix component count + components (u32 len + bytes),
    // then ceil(m/8) bytes of bit array, LSB-first within each byte.
    Bytes serialize(const Name& producer_prefix) const;
    static std::pair<BloomFilter, Name> deserialize(const Bytes& payload);

private:
    BloomParams params_;
    std::vector<std::uint64_t> words_;
    std::uint64_t count_ = 0;
};

// False positive probability, exact form: (1 - (1 - 1/m)^{kn})^k.
double fp_exact(std::uint64_t m, std::uint64_t n, std::uint32_t k);
// Exponential approximation: (1 - e^{-kn/m})^k.
double fp_approx(std::uint64_t m, std::uint64_t n, std::uint32_t k);
// False positive probability at the optimized hash count: 0.6185^{m/n}.
double fp_optimal(std::uint64_t m, std::uint64_t n);
// round((m/n) ln 2), clamped to [1, k_max].
std::uint32_t optimal_k(std::uint64_t m, std::uint64_t n, int k_max = kDefaultKMax);

// Freshness = 1 / average publish frequency over [now - tau, now];
// zero publications in the window yield kFreshnessCap.
SimTime freshness_for(const std::vector<SimTime>& publish_events, SimTime tau, SimTime now,
                      SimTime cap = kFreshnessCap);

} // namespace nacksim
