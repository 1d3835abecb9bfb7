#include <benchmark/benchmark.h>

#include "nacksim/bloom.hpp"
#include "nacksim/crypto.hpp"
#include "nacksim/router.hpp"
#include "nacksim/zipf.hpp"

using namespace nacksim;

namespace {

Name bench_name(std::uint64_t i) { return Name({"ndn", "bench", std::to_string(i)}); }

void BM_Sha256(benchmark::State& state) {
    Bytes data(static_cast<std::size_t>(state.range(0)), 'x');
    for (auto _ : state)
        benchmark::DoNotOptimize(sha256(data));
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sha256)->Arg(64)->Arg(1024)->Arg(8192);

void BM_HmacFnack(benchmark::State& state) {
    LinkKey key{"benchmark-link-secret"};
    FNack fn;
    fn.name = bench_name(1);
    fn.timestamp = 12345;
    for (auto _ : state)
        benchmark::DoNotOptimize(mac_fnack(fn, key));
}
BENCHMARK(BM_HmacFnack);

void BM_SignVerify(benchmark::State& state) {
    KeyPair key = make_keypair(7);
    ContentObject obj;
    obj.name = bench_name(2);
    obj.payload = Bytes(1024, 'p');
    obj.freshness = 60 * kUsPerSec;
    obj = sign_content(std::move(obj), key);
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_content(obj));
}
BENCHMARK(BM_SignVerify);

void BM_EncodeDecode(benchmark::State& state) {
    Interest in;
    in.name = bench_name(3);
    in.key_digest = sha256("k");
    for (auto _ : state) {
        Bytes wire = encode(in);
        benchmark::DoNotOptimize(decode(wire));
    }
}
BENCHMARK(BM_EncodeDecode);

void BM_BloomInsert(benchmark::State& state) {
    BloomFilter filter(BloomParams{63488, 1000, optimal_k(63488, 1000), 1});
    std::uint64_t i = 0;
    for (auto _ : state)
        filter.insert(bench_name(i++));
}
BENCHMARK(BM_BloomInsert);

void BM_BloomQuery(benchmark::State& state) {
    BloomFilter filter(BloomParams{63488, 1000, optimal_k(63488, 1000), 1});
    for (std::uint64_t i = 0; i < 1000; ++i)
        filter.insert(bench_name(i));
    std::uint64_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(filter.query(bench_name(i++)));
}
BENCHMARK(BM_BloomQuery);

void BM_ZipfDraw(benchmark::State& state) {
    ZipfSampler sampler(static_cast<std::uint32_t>(state.range(0)), 1.0);
    std::mt19937_64 rng(99);
    for (auto _ : state)
        benchmark::DoNotOptimize(sampler(rng));
}
BENCHMARK(BM_ZipfDraw)->Arg(1000)->Arg(100000);

class Blackhole : public Node {
public:
    using Node::Node;
    void on_packet(const Packet&, FaceId) override {}
};

// full interest pipeline: CS miss, PIT insert, FIB match, upstream dispatch
void BM_RouterInterestPath(benchmark::State& state) {
    Engine eng(1);
    RouterConfig cfg;
    cfg.proc_us = 0;
    cfg.hmac_us = 0;
    auto& router = eng.add_node<Router>("r0", cfg);
    auto& down = eng.add_node<Blackhole>("down");
    auto& up = eng.add_node<Blackhole>("up");
    eng.connect(router, down, LinkConfig{0, 0, 1 << 20});
    eng.connect(router, up, LinkConfig{0, 0, 1 << 20});
    router.add_route(Name({"ndn"}), {1});

    Interest in;
    in.key_digest = sha256("k");
    in.lifetime = 3600 * kUsPerSec;
    std::uint64_t i = 0;
    for (auto _ : state) {
        in.name = Name({"ndn", std::to_string(i++)});
        router.on_interest(in, 0);
    }
}
BENCHMARK(BM_RouterInterestPath);

} // namespace

BENCHMARK_MAIN();
