#pragma once

#include "nacksim/consumer.hpp"
#include "nacksim/producer.hpp"
#include "nacksim/router.hpp"
#include "nacksim/scenario.hpp"

namespace nacksim {

// Swallows everything; stands in for an unreachable upstream.
class Sink : public Node {
public:
    using Node::Node;
    void on_packet(const Packet&, FaceId) override {}
};

struct Topology {
    Router* core = nullptr;                 // consumer-facing router
    std::vector<Router*> routers;           // chain, core first
    std::vector<Node*> relays;              // multi_upstream only
    std::vector<Producer*> producers;
    std::vector<Consumer*> consumers;
    KeyRegistry registry;
    std::uint64_t benign_count = 0;
    std::uint64_t malicious_count = 0;
    std::uint64_t next_consumer_id = 0;
};

// Consumers - router chain - producer(s); FIB entries route the producer
// prefix towards the producer side. router_count > 1 builds a chain.
Topology build_topology(Engine& eng, const Scenario& sc);

// Attaches one more consumer of the given kind to the core router, mid-run or
// during setup. Returns the new node.
Consumer& add_consumer(Engine& eng, Topology& topo, const Scenario& sc, ConsumerKind kind);

// Admin events adding one consumer of `sc.growth_add` kind per 1/per_second
// until growth_stop_s.
void schedule_population_growth(Engine& eng, Topology& topo, const Scenario& sc);

} // namespace nacksim
