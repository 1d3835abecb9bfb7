#pragma once

// Shared helpers for driving routers/producers in controlled mini-topologies.

#include <functional>

#include "nacksim/runner.hpp"

namespace nacksim::test {

// Scripted endpoint: runs a callback on every packet and can send on cue.
class ScriptNode : public Node {
public:
    using Handler = std::function<void(ScriptNode&, const Packet&, FaceId)>;

    ScriptNode(Engine& eng, std::string label, NodeKind kind = NodeKind::Other)
        : Node(eng, std::move(label)), kind_(kind) {}

    NodeKind kind() const override { return kind_; }

    void on_packet(const Packet& pkt, FaceId in_face) override {
        received.emplace_back(pkt, in_face);
        if (handler)
            handler(*this, pkt, in_face);
    }

    void send(FaceId face, Packet pkt) { eng_.send(*this, face, std::move(pkt)); }
    Engine& engine() { return eng_; }

    template <typename T>
    std::size_t count_received() const {
        std::size_t n = 0;
        for (const auto& [pkt, face] : received)
            if (std::holds_alternative<T>(pkt))
                ++n;
        return n;
    }

    Handler handler;
    std::vector<std::pair<Packet, FaceId>> received;

private:
    NodeKind kind_;
};

inline Scenario tiny_scenario() {
    Scenario sc;
    sc.duration_s = 30;
    sc.seed = 7;
    sc.consumers = 1;
    sc.catalog = "ranks";
    sc.catalog_size = 100;
    sc.benign_kind = "ZIPF";
    sc.sign_cost_ms = 0.5;
    sc.lookup_cost_ms = 0.05;
    return sc;
}

} // namespace nacksim::test
