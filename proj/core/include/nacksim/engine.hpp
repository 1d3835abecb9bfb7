#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "nacksim/crypto.hpp"
#include "nacksim/metrics.hpp"
#include "nacksim/packet.hpp"
#include "nacksim/time.hpp"

namespace nacksim {

class Engine;

enum class NodeKind { Consumer, Router, Producer, Other };

class Node {
public:
    Node(Engine& eng, std::string label) : eng_(eng), label_(std::move(label)) {}
    virtual ~Node() = default;

    virtual void on_packet(const Packet& pkt, FaceId in_face) = 0;
    virtual void start() {}
    virtual NodeKind kind() const { return NodeKind::Other; }

    const std::string& label() const { return label_; }
    std::size_t face_count() const { return faces_.size(); }

protected:
    Engine& eng_;
    std::string label_;

private:
    friend class Engine;
    struct FaceRef {
        std::size_t link = 0;
        bool is_a = false;
    };
    std::vector<FaceRef> faces_;
};

struct LinkConfig {
    SimTime delay = 10 * kUsPerMs;
    SimTime tx_us = 0;              // per-packet transmission time; 0 = pure delay pipe
    std::size_t queue_capacity = 1000;
};

// Deterministic discrete-event core. Events are totally ordered by
// (time, insertion sequence); identical (scenario, seed) replays bit-equal.
class Engine {
public:
    explicit Engine(std::uint64_t seed, SimTime metrics_bucket = kUsPerSec)
        : seed_(seed), metrics_(metrics_bucket) {}

    SimTime now() const { return now_; }
    std::uint64_t seed() const { return seed_; }
    Metrics& metrics() { return metrics_; }
    const Metrics& metrics() const { return metrics_; }

    void at(SimTime when, std::function<void()> fn);
    void after(SimTime delay, std::function<void()> fn) { at(now_ + delay, std::move(fn)); }

    template <typename T, typename... Args>
    T& add_node(Args&&... args) {
        auto node = std::make_unique<T>(*this, std::forward<Args>(args)...);
        T& ref = *node;
        nodes_.push_back(std::move(node));
        return ref;
    }

    std::size_t connect(Node& a, Node& b, LinkConfig cfg);

    void send(Node& from, FaceId face, Packet pkt);
    // Test hook: deliver a packet to a node's face at an absolute time,
    // bypassing any link (used to model an on-path adversary).
    void inject(Node& to, FaceId face, Packet pkt, SimTime when);

    std::size_t face_queue_len(const Node& n, FaceId face) const;
    const LinkKey& face_key(const Node& n, FaceId face) const;
    Node& peer(const Node& n, FaceId face) const;
    NodeKind peer_kind(const Node& n, FaceId face) const { return peer(n, face).kind(); }

    std::mt19937_64 make_rng(std::string_view tag) const {
        return std::mt19937_64(mix_seed(seed_, tag));
    }

    // Runs node start() hooks (once) and all events up to end time.
    void run_until(SimTime end);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t link_count() const { return links_.size(); }

    // Per-link packet accounting, summed into the metrics summary.
    void flush_link_counters();

private:
    struct LinkDir {
        SimTime busy_until = 0;
        std::int64_t sent = 0;
        std::int64_t delivered = 0;
        std::int64_t dropped = 0;
    };
    struct Link {
        Node* a = nullptr;
        Node* b = nullptr;
        FaceId a_face = 0;
        FaceId b_face = 0;
        LinkConfig cfg;
        LinkKey key;
        LinkDir ab, ba;
    };

    struct Event {
        SimTime at;
        std::uint64_t seq;
        std::function<void()> fn;
    };
    struct EventAfter {
        bool operator()(const Event& x, const Event& y) const {
            return x.at != y.at ? x.at > y.at : x.seq > y.seq;
        }
    };

    Link& link_of(const Node& n, FaceId face);
    const Link& link_of(const Node& n, FaceId face) const;

    std::uint64_t seed_;
    SimTime now_ = 0;
    std::uint64_t next_seq_ = 0;
    std::size_t started_ = 0;
    Metrics metrics_;
    std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
    std::vector<std::unique_ptr<Node>> nodes_;
    std::vector<std::unique_ptr<Link>> links_;
};

} // namespace nacksim
