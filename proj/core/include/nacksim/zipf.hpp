#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace nacksim {

// Deterministic uniform double in [0, 1); avoids distribution objects whose
// output is implementation-defined.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    // rejection sampling keeps the draw unbiased
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

// Draws ranks in [1, n] with P(r) proportional to r^-alpha.
class ZipfSampler {
public:
    ZipfSampler(std::uint32_t n, double alpha);
    std::uint32_t operator()(std::mt19937_64& rng) const;
    double rank_probability(std::uint32_t rank) const;

private:
    std::vector<double> cdf_;
};

} // namespace nacksim
