#include <doctest.h>

#include <cmath>

#include "nacksim/bloom.hpp"
#include "nacksim/name.hpp"

using namespace nacksim;

namespace {

Name nm(const std::string& tag) { return Name({"p", tag}); }

} // namespace

TEST_CASE("no false negatives") {
    BloomFilter filter(BloomParams{4096, 100, 4, 99});
    for (int i = 0; i < 100; ++i)
        filter.insert(nm("in" + std::to_string(i)));
    for (int i = 0; i < 100; ++i)
        CHECK(filter.query(nm("in" + std::to_string(i))));
}

TEST_CASE("empty filter rejects everything") {
    BloomFilter filter(BloomParams{1024, 0, 3, 1});
    for (int i = 0; i < 50; ++i)
        CHECK_FALSE(filter.query(nm("x" + std::to_string(i))));
    CHECK(fp_exact(1024, 0, 3) == 0.0);
}

TEST_CASE("fp_exact closed form") {
    CHECK(fp_exact(10, 1, 1) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(fp_exact(12345, 0, 5) == 0.0);
    // exact and exponential forms agree for large m
    for (std::uint64_t m : {1000ull, 4096ull, 9585ull, 65536ull})
        for (std::uint64_t n : {m / 50, m / 10, m / 4})
            for (std::uint32_t k : {1u, 3u, 7u, 16u})
                CHECK(std::abs(fp_exact(m, n, k) - fp_approx(m, n, k)) < 1e-3);
    CHECK(std::abs(fp_exact(9585, 1000, 7) - fp_approx(9585, 1000, 7)) < 1e-3);
}

TEST_CASE("fp_optimal closed form") {
    CHECK(fp_optimal(10, 1) == doctest::Approx(8.1917e-3).epsilon(1e-3));
    CHECK(fp_optimal(5, 1) == doctest::Approx(9.0508e-2).epsilon(1e-3));
    CHECK(fp_optimal(1000, 1000) == doctest::Approx(0.6185).epsilon(1e-12));
    for (std::uint64_t ratio : {5ull, 10ull, 15ull, 20ull})
        CHECK(std::abs(fp_optimal(ratio * 1000, 1000) -
                       std::pow(0.6185, static_cast<double>(ratio))) < 1e-9);
}

TEST_CASE("optimal_k rounding and clamping") {
    CHECK(optimal_k(9585, 1000) == 7);  // 9.585 * ln2 = 6.64
    CHECK(optimal_k(1, 1000) == 1);
    CHECK(optimal_k(1000000, 10) == kDefaultKMax);
    CHECK(optimal_k(1000000, 10, 24) == 24);
    // local optimality up to rounding
    for (std::uint64_t ratio = 2; ratio <= 30; ++ratio) {
        std::uint64_t n = 1000, m = ratio * n;
        std::uint32_t k = optimal_k(m, n, 64);
        double at_k = fp_exact(m, n, k);
        CHECK(at_k <= fp_exact(m, n, k + 1) * 1.0001);
        if (k > 1)
            CHECK(at_k <= fp_exact(m, n, k - 1) * 1.0001);
    }
}

TEST_CASE("fp monotone in n and m") {
    for (std::uint32_t k : {2u, 5u, 8u}) {
        double prev = 0.0;
        for (std::uint64_t n = 100; n <= 2000; n += 100) {
            double fp = fp_exact(16384, n, k);
            CHECK(fp >= prev);
            prev = fp;
        }
        prev = 1.0;
        for (std::uint64_t m = 4096; m <= 65536; m += 4096) {
            double fp = fp_exact(m, 1000, k);
            CHECK(fp <= prev);
            prev = fp;
        }
    }
}

TEST_CASE("optimized k tracks the closed-form optimum within rounding slack") {
    // k_max lifted: the default clamp of 16 binds above m/n ~ 23 and is a
    // deliberate hashing-cost bound, not a rounding effect
    for (double ratio = 2.0; ratio <= 30.0; ratio += 0.5) {
        std::uint64_t n = 10000;
        std::uint64_t m = static_cast<std::uint64_t>(ratio * n);
        CHECK(fp_exact(m, n, optimal_k(m, n, 64)) <= 1.05 * fp_optimal(m, n));
    }
}

TEST_CASE("monte-carlo false positive rate matches the closed form") {
    // measurable regime: m=8192 bits, k=6, n=1000
    BloomParams params{8192, 1000, 6, 2024};
    BloomFilter filter(params);
    for (int i = 0; i < 1000; ++i)
        filter.insert(nm("in" + std::to_string(i)));
    std::uint64_t hits = 0;
    const std::uint64_t probes = 100000;
    for (std::uint64_t i = 0; i < probes; ++i)
        if (filter.query(nm("out" + std::to_string(i))))
            ++hits;
    double observed = static_cast<double>(hits) / static_cast<double>(probes);
    double expected = fp_exact(8192, 1000, 6);
    CHECK(std::abs(observed - expected) <= 0.2 * expected);
}

TEST_CASE("freshness follows the publish rate") {
    std::vector<SimTime> events;
    for (int i = 1; i <= 5; ++i)
        events.push_back(i * 2 * kUsPerSec);  // 5 events within 10 s
    SimTime tau = 10 * kUsPerSec;
    CHECK(freshness_for(events, tau, 10 * kUsPerSec) == 2 * kUsPerSec);

    std::vector<SimTime> ten;
    for (int i = 1; i <= 10; ++i)
        ten.push_back(i * kUsPerSec);
    CHECK(freshness_for(ten, tau, 10 * kUsPerSec) == kUsPerSec);

    CHECK(freshness_for({}, tau, 10 * kUsPerSec) == kFreshnessCap);
    // events outside the window do not count
    CHECK(freshness_for({0}, tau, 100 * kUsPerSec) == kFreshnessCap);
}

TEST_CASE("filter payload round-trips bit-exactly") {
    BloomParams params{2048, 50, 5, 77};
    BloomFilter filter(params);
    for (int i = 0; i < 50; ++i)
        filter.insert(nm("x" + std::to_string(i)));
    Name prefix = parse_name("/p/videos");
    Bytes payload = filter.serialize(prefix);
    auto [back, back_prefix] = BloomFilter::deserialize(payload);
    CHECK(back_prefix == prefix);
    CHECK(back.params().m == params.m);
    CHECK(back.params().k == params.k);
    CHECK(back.params().seed == params.seed);
    CHECK(back.count() == 50);
    CHECK(back.words() == filter.words());
    CHECK(back.serialize(back_prefix) == payload);
    for (int i = 0; i < 50; ++i)
        CHECK(back.query(nm("x" + std::to_string(i))));
}
