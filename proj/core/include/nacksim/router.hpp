#pragma once

#include <list>
#include <map>

#include "nacksim/bloom.hpp"
#include "nacksim/engine.hpp"
#include "nacksim/prefix_map.hpp"

namespace nacksim {

enum class Strategy { Parallel, Sequential };
enum class UpstreamStatus { Unsent, Awaiting, TimedOut, Fnacked };
enum class FnackAction { TryNext, ForwardDown, FlushSilent, Wait };
enum class PitEventKind { FnackVerified, Timeout };

struct FibEntry {
    Name prefix;
    std::vector<FaceId> upstream_faces;  // ordered; sequential strategy tries in order
};

struct PitUpstream {
    FaceId face = 0;
    UpstreamStatus status = UpstreamStatus::Unsent;
    SimTime deadline = 0;
};

struct PitEntry {
    Name name;
    Interest interest;  // first arriving interest; collapsed ones add faces only
    std::vector<FaceId> downstream_faces;
    Strategy strategy = Strategy::Parallel;
    std::vector<PitUpstream> upstreams;
    SimTime entry_expiry = 0;
    FnackReason last_fnack_reason = FnackReason::NoRoute;
    std::uint64_t serial = 0;  // guards against stale timer events

    PitUpstream* find_upstream(FaceId face);
    PitUpstream* next_unsent();
    bool all_terminal() const;
    bool all_fnacked() const;
};

// Per-face outcome bookkeeping for a pending interest. Marks `face` with the
// event outcome, then decides: keep trying (sequential), notify downstream
// (every upstream refused), flush silently (any timeout among terminal
// outcomes), or wait for more events.
FnackAction fnack_decide(PitEntry& entry, FaceId face, PitEventKind event);

struct CsEntry {
    ContentObject object;
    SimTime inserted_at = 0;
    SimTime stale_at = 0;
    bool is_blm = false;
};

struct RouterConfig {
    Strategy strategy = Strategy::Parallel;
    SimTime face_timeout = kUsPerSec;
    std::size_t congestion_threshold = 100;
    std::size_t cs_capacity = 10000;
    bool enforce_ikb = true;
    bool fnack_auth = true;
    TimeWindow cnack_window{60 * kUsPerSec};
    TimeWindow fnack_window{5 * kUsPerSec};
    SimTime clock_skew = 0;
    SimTime proc_us = 2;  // per-packet processing service time
    SimTime hmac_us = 1;  // extra charge per fNACK MAC/verify
    bool bloom_screening = true;
};

class Router : public Node {
public:
    Router(Engine& eng, std::string label, RouterConfig cfg = {});

    NodeKind kind() const override { return NodeKind::Router; }

    void add_route(const Name& prefix, std::vector<FaceId> upstream_faces);

    // Packets pass through a single-server processing queue (proc_us each);
    // the pipeline below runs at dequeue time.
    void on_packet(const Packet& pkt, FaceId in_face) override;
    // Wire-level entry for byte inputs; decode failures are counted and dropped.
    void on_wire(const Bytes& wire, FaceId in_face);

    void on_interest(const Interest& interest, FaceId in_face);
    void on_content(const ContentObject& obj, FaceId in_face);
    void on_fnack(const FNack& fnack, FaceId in_face);

    // Sweeps stale CS entries, expired PIT entries and overdue face deadlines.
    void expire_tables(SimTime now);

    void cs_insert(const ContentObject& obj, SimTime now);
    void install_screen_filter(const Name& prefix, BloomFilter filter, SimTime expires_at);

    // Test/inspection hooks.
    const PitEntry* pit_find(const Name& name) const;
    const CsEntry* cs_find(const Name& name) const;
    std::size_t pit_size() const { return pit_.size(); }
    std::size_t cs_size() const { return cs_.size(); }
    bool has_screen_filter(const Name& prefix) const;
    const RouterConfig& config() const { return cfg_; }

private:
    struct ScreenFilter {
        Name prefix;
        BloomFilter filter;
        SimTime expires_at = 0;
    };

    enum class FlushCause { Content, FnackDown, Silent, Expired };

    void dispatch(const Packet& pkt, FaceId in_face, SimTime arrival);
    void dispatch_interest(PitEntry& entry, SimTime now);
    void send_on_face(PitEntry& entry, PitUpstream& up, SimTime now);
    void apply_fnack_event(const std::string& key, FaceId face, PitEventKind event);
    void emit_fnacks(const Name& name, FnackReason reason,
                     const std::vector<FaceId>& downstream, SimTime now,
                     bool forwarding = false);
    void flush_entry(const std::string& key, FlushCause cause);
    bool verify_inbound_content(const PitEntry& entry, const ContentObject& obj, SimTime now);
    const CsEntry* cs_lookup(const Name& name, SimTime now);
    void cs_touch(const std::string& key);
    void schedule_face_timer(const std::string& key, std::uint64_t serial, FaceId face,
                             SimTime deadline);

    RouterConfig cfg_;
    PrefixMap<FibEntry> fib_;
    std::map<std::string, PitEntry> pit_;
    std::map<std::string, CsEntry> cs_;
    std::list<std::string> lru_;  // front = most recently used
    std::map<std::string, std::list<std::string>::iterator> lru_pos_;
    std::map<std::string, ScreenFilter> screens_;
    SimTime busy_until_ = 0;
    std::uint64_t next_serial_ = 1;

    struct Counters {
        Metrics::Counter interests_in, interests_out, collapses, cs_hits, cs_hits_cnack,
            cs_insertions, cnacks_cached, fnacks_generated, fnacks_forwarded, fnacks_rejected,
            screening_drops, poisoned_drops, unsolicited_drops, malformed_drops, pit_created,
            pit_flushed, blm_cached, blm_withheld, sig_verifications, content_forwarded;
        Metrics::Sampler fwd_delay;
    } ctr_;
};

} // namespace nacksim
