#pragma once

#include <deque>
#include <set>

#include "nacksim/bloom.hpp"
#include "nacksim/engine.hpp"
#include "nacksim/prefix_map.hpp"

namespace nacksim {

enum class CatalogKind {
    List,       // explicit published names
    Ranks,      // /prefix/<r> for r in [1, catalog_size]
    Sequences,  // virtual: /prefix/<id>/<seq>, both numeric; not enumerable
};

// Published-name catalog under one registered prefix.
class Catalog {
public:
    Catalog() = default;
    Catalog(Name prefix, CatalogKind kind, std::uint64_t initial_size = 0);

    const Name& prefix() const { return prefix_; }
    CatalogKind catalog_kind() const { return kind_; }
    bool enumerable() const { return kind_ != CatalogKind::Sequences; }

    bool published(const Name& name) const;
    void publish(const Name& name, SimTime now);
    void unpublish(const Name& name);

    std::uint64_t size() const { return names_.size(); }
    std::uint64_t version() const { return version_; }
    std::size_t max_depth() const { return max_depth_; }
    const std::vector<SimTime>& publish_log() const { return publish_log_; }
    const std::set<std::string>& keys() const { return names_; }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (const auto& key : names_)
            fn(parse_name(key));
    }

private:
    Name prefix_;
    CatalogKind kind_ = CatalogKind::List;
    std::set<std::string> names_;
    std::vector<SimTime> publish_log_;
    std::uint64_t version_ = 0;
    std::size_t max_depth_ = 0;
};

enum class Plausibility { AcceptAll, DepthAlphabet };

struct CnackPolicy {
    SimTime interval = kUsPerSec;                 // one cNACK per name per interval
    SimTime expiration_horizon = 60 * kUsPerSec;  // >= interval
    Plausibility plausibility = Plausibility::DepthAlphabet;
};

struct ServiceModel {
    SimTime sign_cost = 2 * kUsPerMs;
    SimTime lookup_cost = 50;  // us
};

enum class BloomMode { Off, On, Auto };
enum class GatewayQueue { Repo, Nack };

struct ProducerConfig {
    Name prefix;
    CatalogKind catalog = CatalogKind::Ranks;
    std::uint64_t catalog_size = 1000;
    SimTime data_freshness = 60 * kUsPerSec;
    ServiceModel service;
    CnackPolicy cnack;
    BloomMode bloom = BloomMode::Off;
    std::uint64_t bloom_bits = 63488;
    SimTime bloom_tau = 60 * kUsPerSec;
    std::uint64_t bloom_load_threshold = 100;  // signatures/s that trip Auto mode
    SimTime bloom_active_hold = 60 * kUsPerSec;
    SimTime bloom_rotate = 0;  // re-create filters with a fresh seed every period; 0 = off
    int bloom_shard_components = 0;
    std::size_t max_segment = kDefaultMaxSegment;
    bool gateway = false;
    std::size_t queue_capacity = 0;  // 0 = unbounded
};

// Serves a content catalog: signed DATA for published names, per-interval
// signed CNACKs for plausible unpublished names, silence otherwise, and
// optionally BLM-FLTR responses or a gateway split between a repository
// queue and a NACK-generation queue.
class Producer : public Node {
public:
    Producer(Engine& eng, std::string label, ProducerConfig cfg, KeyPair key);

    NodeKind kind() const override { return NodeKind::Producer; }

    void on_packet(const Packet& pkt, FaceId in_face) override;

    void publish(const Name& name);
    bool plausible(const Name& name) const;

    ContentObject make_data(const Name& name) const;
    ContentObject make_cnack(const Name& name, SimTime now, const CnackPolicy& policy);
    // Builds (or reuses) the filter object for the namespace shard covering
    // `response_name`; throws std::runtime_error on a non-enumerable catalog.
    ContentObject publish_bloom(const Name& response_name, SimTime now);
    // Copy of the current filter for `name`'s shard plus its freshness horizon.
    std::pair<BloomFilter, SimTime> filter_snapshot(const Name& name, SimTime now);
    GatewayQueue gateway_dispatch(const Interest& interest) const;

    const Catalog& catalog() const { return catalog_; }
    SimTime data_delay_p95_us() const { return data_delay_hist_.quantile(0.95); }
    const KeyPair& key() const { return key_; }
    const ProducerConfig& config() const { return cfg_; }
    bool bloom_active(SimTime now) const;
    std::int64_t requirement_violations() const { return requirement_violations_; }

private:
    struct Job {
        Interest interest;
        FaceId face;
        SimTime arrival;
    };
    struct ServerQueue {
        std::deque<Job> q;
        bool busy = false;
    };
    enum class ReplyKind { Data, Cnack, Bloom, Silence };

    void enqueue(ServerQueue& sq, Job job, SimTime now);
    void begin_service(ServerQueue& sq, Job job, SimTime now);
    void note_signature(SimTime now);
    Name shard_prefix(const Name& name) const;
    const BloomFilter* shard_filter(const Name& name, SimTime now);

    ProducerConfig cfg_;
    KeyPair key_;
    Catalog catalog_;
    std::set<std::string> gateway_snapshot_;

    // cNACK memo for the current interval
    SimTime memo_interval_start_ = -1;
    std::map<std::string, ContentObject> cnack_memo_;

    // built filters per shard prefix, keyed by shard; rebuilt on version bump
    struct BuiltFilter {
        std::uint64_t version = ~0ull;
        std::uint64_t seed = 0;
        BloomFilter filter{BloomParams{1, 0, 1, 0}};
    };
    std::map<std::string, BuiltFilter> filters_;
    std::deque<SimTime> recent_signs_;
    SimTime bloom_active_until_ = 0;

    ServerQueue main_q_;  // also the gateway NACK queue
    ServerQueue repo_q_;  // gateway repository queue
    DelayHistogram data_delay_hist_;
    std::int64_t requirement_violations_ = 0;

    struct Counters {
        Metrics::Counter data_served, cnacks_signed, cnacks_memoized, blooms_published,
            implausible_silences, out_of_prefix, policy_drops, publishes;
        Metrics::Sampler data_delay, cnack_delay, repo_delay, nack_delay, queue_depth;
    } ctr_;
};

} // namespace nacksim
