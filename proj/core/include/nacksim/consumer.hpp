#pragma once

#include <map>

#include "nacksim/engine.hpp"
#include "nacksim/zipf.hpp"

namespace nacksim {

enum class ConsumerKind { BenignBasic, BenignZipf, Malicious };

struct ConsumerProfile {
    ConsumerKind kind = ConsumerKind::BenignBasic;
    double rate = 10.0;  // interests per second
    double zipf_alpha = 1.0;
    std::uint32_t catalog_size = 1000;
    std::uint32_t suffix_len = 0;  // malicious suffix components; 0 = catalog depth
    int retx_limit = 3;
    SimTime lifetime = 4 * kUsPerSec;
    Name producer_prefix;          // requested namespace root
    Name request_namespace;        // basic mode: this consumer's own subspace
    std::optional<Digest> key_digest;  // producer key digest carried in interests
    std::uint32_t catalog_depth = 1;   // published-name components under the prefix
    bool malicious_plausible = true;
    bool fnack_retx = false;
    SimTime start_offset = 0;  // delay before the first send; spacing stays 1/rate
};

// Workload generator: sequential, Zipf-popularity or malicious random-name
// interests at a fixed rate, with timeout-driven retransmission.
class Consumer : public Node {
public:
    Consumer(Engine& eng, std::string label, ConsumerProfile profile);

    NodeKind kind() const override { return NodeKind::Consumer; }

    void start() override;
    void on_packet(const Packet& pkt, FaceId in_face) override;

    Interest next_interest(SimTime now);

    const ConsumerProfile& profile() const { return profile_; }

    struct Totals {
        std::int64_t sent = 0;
        std::int64_t data_received = 0;
        std::int64_t not_found = 0;
        std::int64_t unreachable = 0;
        std::int64_t abandoned = 0;
        std::int64_t retransmissions = 0;
        std::int64_t unknown_responses = 0;
        std::int64_t rtt_sum_us = 0;
    };
    const Totals& totals() const { return totals_; }

private:
    struct Outstanding {
        Interest interest;
        SimTime first_sent = 0;
        int retx_left = 0;
        std::uint64_t serial = 0;
    };

    void send_tick();
    void transmit(const Interest& interest, bool is_retx);
    void arm_timer(const std::string& key, std::uint64_t serial);
    Name make_malicious_name(SimTime now);

    ConsumerProfile profile_;
    std::mt19937_64 rng_;
    std::optional<ZipfSampler> zipf_;
    SimTime period_ = 0;
    std::uint64_t seq_ = 0;
    std::uint64_t next_serial_ = 1;
    std::map<std::string, Outstanding> outstanding_;
    Totals totals_;

    struct Counters {
        Metrics::Counter sent, data_received, not_found, unreachable, abandoned,
            retransmissions, unknown;
        Metrics::Sampler rtt;
    } ctr_;
};

} // namespace nacksim
