#include "nacksim/engine.hpp"

#include <stdexcept>

namespace nacksim {

void Engine::at(SimTime when, std::function<void()> fn) {
    if (when < now_)
        throw std::logic_error("scheduling into the past");
    queue_.push(Event{when, next_seq_++, std::move(fn)});
}

std::size_t Engine::connect(Node& a, Node& b, LinkConfig cfg) {
    auto link = std::make_unique<Link>();
    link->a = &a;
    link->b = &b;
    link->cfg = cfg;
    link->a_face = static_cast<FaceId>(a.faces_.size());
    link->b_face = static_cast<FaceId>(b.faces_.size());
    std::size_t id = links_.size();
    link->key.secret = digest_bytes(
        sha256("link:" + std::to_string(seed_) + ":" + std::to_string(id)));
    a.faces_.push_back(Node::FaceRef{id, true});
    b.faces_.push_back(Node::FaceRef{id, false});
    links_.push_back(std::move(link));
    return id;
}

Engine::Link& Engine::link_of(const Node& n, FaceId face) {
    if (face >= n.faces_.size())
        throw std::out_of_range("no such face on " + n.label());
    return *links_[n.faces_[face].link];
}

const Engine::Link& Engine::link_of(const Node& n, FaceId face) const {
    if (face >= n.faces_.size())
        throw std::out_of_range("no such face on " + n.label());
    return *links_[n.faces_[face].link];
}

void Engine::send(Node& from, FaceId face, Packet pkt) {
    Link& link = link_of(from, face);
    bool from_a = from.faces_[face].is_a;
    LinkDir& dir = from_a ? link.ab : link.ba;
    Node* to = from_a ? link.b : link.a;
    FaceId to_face = from_a ? link.b_face : link.a_face;

    ++dir.sent;
    SimTime arrival;
    if (link.cfg.tx_us > 0) {
        SimTime start = std::max(now_, dir.busy_until);
        std::size_t waiting = static_cast<std::size_t>((start - now_) / link.cfg.tx_us);
        if (waiting >= link.cfg.queue_capacity) {
            ++dir.dropped;
            return;
        }
        dir.busy_until = start + link.cfg.tx_us;
        arrival = dir.busy_until + link.cfg.delay;
    } else {
        arrival = now_ + link.cfg.delay;
    }
    LinkDir* dirp = &dir;
    at(arrival, [to, to_face, dirp, p = std::move(pkt)]() {
        ++dirp->delivered;
        to->on_packet(p, to_face);
    });
}

void Engine::inject(Node& to, FaceId face, Packet pkt, SimTime when) {
    Node* target = &to;
    at(when, [target, face, p = std::move(pkt)]() { target->on_packet(p, face); });
}

std::size_t Engine::face_queue_len(const Node& n, FaceId face) const {
    const Link& link = link_of(n, face);
    const LinkDir& dir = n.faces_[face].is_a ? link.ab : link.ba;
    if (link.cfg.tx_us <= 0 || dir.busy_until <= now_)
        return 0;
    return static_cast<std::size_t>((dir.busy_until - now_ + link.cfg.tx_us - 1) /
                                    link.cfg.tx_us);
}

const LinkKey& Engine::face_key(const Node& n, FaceId face) const {
    return link_of(n, face).key;
}

Node& Engine::peer(const Node& n, FaceId face) const {
    const Link& link = link_of(n, face);
    return n.faces_[face].is_a ? *link.b : *link.a;
}

void Engine::run_until(SimTime end) {
    // start() hooks for nodes added since the last call (attach-time for
    // nodes created mid-run by admin events).
    while (started_ < nodes_.size())
        nodes_[started_++]->start();
    while (!queue_.empty() && queue_.top().at <= end) {
        Event ev = queue_.top();
        queue_.pop();
        now_ = ev.at;
        ev.fn();
        while (started_ < nodes_.size())
            nodes_[started_++]->start();
    }
    now_ = end;
}

void Engine::flush_link_counters() {
    std::int64_t sent = 0, delivered = 0, dropped = 0;
    for (const auto& link : links_) {
        for (const LinkDir* d : {&link->ab, &link->ba}) {
            sent += d->sent;
            delivered += d->delivered;
            dropped += d->dropped;
        }
    }
    metrics_.set_summary("links", "packets_sent", sent);
    metrics_.set_summary("links", "packets_delivered", delivered);
    metrics_.set_summary("links", "packets_dropped_queue", dropped);
    metrics_.set_summary("links", "packets_in_flight", sent - delivered - dropped);
}

} // namespace nacksim
