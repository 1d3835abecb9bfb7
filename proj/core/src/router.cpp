#include "nacksim/router.hpp"

#include <algorithm>

namespace nacksim {

PitUpstream* PitEntry::find_upstream(FaceId face) {
    for (auto& up : upstreams)
        if (up.face == face)
            return &up;
    return nullptr;
}

PitUpstream* PitEntry::next_unsent() {
    for (auto& up : upstreams)
        if (up.status == UpstreamStatus::Unsent)
            return &up;
    return nullptr;
}

bool PitEntry::all_terminal() const {
    for (const auto& up : upstreams)
        if (up.status == UpstreamStatus::Unsent || up.status == UpstreamStatus::Awaiting)
            return false;
    return true;
}

bool PitEntry::all_fnacked() const {
    for (const auto& up : upstreams)
        if (up.status != UpstreamStatus::Fnacked)
            return false;
    return true;
}

FnackAction fnack_decide(PitEntry& entry, FaceId face, PitEventKind event) {
    PitUpstream* up = entry.find_upstream(face);
    if (!up || up->status != UpstreamStatus::Awaiting)
        return FnackAction::Wait;
    up->status = event == PitEventKind::FnackVerified ? UpstreamStatus::Fnacked
                                                      : UpstreamStatus::TimedOut;
    if (entry.strategy == Strategy::Sequential && entry.next_unsent())
        return FnackAction::TryNext;
    if (!entry.all_terminal())
        return FnackAction::Wait;
    return entry.all_fnacked() ? FnackAction::ForwardDown : FnackAction::FlushSilent;
}

Router::Router(Engine& eng, std::string label, RouterConfig cfg)
    : Node(eng, std::move(label)), cfg_(cfg) {
    auto& m = eng_.metrics();
    ctr_.interests_in = m.handle(label_, "interests_in");
    ctr_.interests_out = m.handle(label_, "interests_out");
    ctr_.collapses = m.handle(label_, "collapses");
    ctr_.cs_hits = m.handle(label_, "cs_hits");
    ctr_.cs_hits_cnack = m.handle(label_, "cs_hits_cnack");
    ctr_.cs_insertions = m.handle(label_, "cs_insertions");
    ctr_.cnacks_cached = m.handle(label_, "cnacks_cached");
    ctr_.fnacks_generated = m.handle(label_, "fnacks_generated");
    ctr_.fnacks_forwarded = m.handle(label_, "fnacks_forwarded");
    ctr_.fnacks_rejected = m.handle(label_, "fnacks_rejected");
    ctr_.screening_drops = m.handle(label_, "screening_drops");
    ctr_.poisoned_drops = m.handle(label_, "poisoned_drops");
    ctr_.unsolicited_drops = m.handle(label_, "unsolicited_drops");
    ctr_.malformed_drops = m.handle(label_, "malformed_drops");
    ctr_.pit_created = m.handle(label_, "pit_created");
    ctr_.pit_flushed = m.handle(label_, "pit_flushed");
    ctr_.blm_cached = m.handle(label_, "blm_cached");
    ctr_.blm_withheld = m.handle(label_, "blm_withheld");
    ctr_.sig_verifications = m.handle(label_, "sig_verifications");
    ctr_.content_forwarded = m.handle(label_, "content_forwarded");
    ctr_.fwd_delay = m.sample_handle(label_, "fwd_delay");
}

void Router::add_route(const Name& prefix, std::vector<FaceId> upstream_faces) {
    fib_.insert(prefix, FibEntry{prefix, std::move(upstream_faces)});
}

void Router::on_packet(const Packet& pkt, FaceId in_face) {
    SimTime arrival = eng_.now();
    SimTime start = std::max(arrival, busy_until_);
    busy_until_ = start + cfg_.proc_us;
    if (busy_until_ == arrival) {
        dispatch(pkt, in_face, arrival);
    } else {
        eng_.at(busy_until_, [this, pkt, in_face, arrival]() { dispatch(pkt, in_face, arrival); });
    }
}

void Router::on_wire(const Bytes& wire, FaceId in_face) {
    try {
        on_packet(decode(wire), in_face);
    } catch (const CodecError&) {
        ctr_.malformed_drops.add(eng_.now());
    }
}

void Router::dispatch(const Packet& pkt, FaceId in_face, SimTime arrival) {
    if (const auto* interest = std::get_if<Interest>(&pkt)) {
        std::int64_t forwarded_before = ctr_.interests_out.total();
        on_interest(*interest, in_face);
        if (ctr_.interests_out.total() > forwarded_before)
            ctr_.fwd_delay.record(eng_.now(), eng_.now() - arrival);
    } else if (const auto* obj = std::get_if<ContentObject>(&pkt)) {
        on_content(*obj, in_face);
    } else {
        on_fnack(std::get<FNack>(pkt), in_face);
    }
}

const CsEntry* Router::cs_lookup(const Name& name, SimTime now) {
    std::string prefix_key = name.to_key();
    auto it = cs_.lower_bound(prefix_key);
    while (it != cs_.end()) {
        const std::string& key = it->first;
        bool in_range = key.size() == prefix_key.size()
                            ? key == prefix_key
                            : key.size() > prefix_key.size() && key.compare(0, prefix_key.size(), prefix_key) == 0 &&
                                  key[prefix_key.size()] == '/';
        if (!in_range)
            return nullptr;
        if (it->second.stale_at <= now) {
            // stale; evict lazily
            lru_.erase(lru_pos_[key]);
            lru_pos_.erase(key);
            it = cs_.erase(it);
            continue;
        }
        if (it->second.is_blm) {
            ++it;
            continue;
        }
        cs_touch(key);
        return &it->second;
    }
    return nullptr;
}

void Router::cs_touch(const std::string& key) {
    auto pos = lru_pos_.find(key);
    lru_.splice(lru_.begin(), lru_, pos->second);
}

void Router::cs_insert(const ContentObject& obj, SimTime now) {
    std::string key = obj.name.to_key();
    SimTime stale_at = now + obj.freshness;
    if (obj.expiration)
        stale_at = std::min(stale_at, *obj.expiration);
    bool is_blm = obj.content_type == ContentType::BlmFltr;

    auto existing = cs_.find(key);
    if (existing != cs_.end()) {
        existing->second = CsEntry{obj, now, stale_at, is_blm};
        cs_touch(key);
        return;
    }
    cs_.emplace(key, CsEntry{obj, now, stale_at, is_blm});
    lru_.push_front(key);
    lru_pos_[key] = lru_.begin();
    ctr_.cs_insertions.add(now);
    if (obj.content_type == ContentType::Cnack)
        ctr_.cnacks_cached.add(now);
    if (is_blm)
        ctr_.blm_cached.add(now);
    while (cs_.size() > cfg_.cs_capacity) {
        std::string victim = lru_.back();
        lru_.pop_back();
        lru_pos_.erase(victim);
        cs_.erase(victim);
    }
}

void Router::install_screen_filter(const Name& prefix, BloomFilter filter, SimTime expires_at) {
    screens_.insert_or_assign(prefix.to_key(),
                              ScreenFilter{prefix, std::move(filter), expires_at});
}

bool Router::has_screen_filter(const Name& prefix) const {
    return screens_.count(prefix.to_key()) > 0;
}

void Router::on_interest(const Interest& interest, FaceId in_face) {
    SimTime now = eng_.now();
    ctr_.interests_in.add(now);

    // 1. content store
    if (const CsEntry* hit = cs_lookup(interest.name, now)) {
        ctr_.cs_hits.add(now);
        if (hit->object.content_type == ContentType::Cnack)
            ctr_.cs_hits_cnack.add(now);
        eng_.send(*this, in_face, hit->object);
        return;
    }

    // 2. pending entry: collapse
    std::string key = interest.name.to_key();
    auto pit_it = pit_.find(key);
    if (pit_it != pit_.end()) {
        auto& faces = pit_it->second.downstream_faces;
        if (std::find(faces.begin(), faces.end(), in_face) == faces.end())
            faces.push_back(in_face);
        ctr_.collapses.add(now);
        return;
    }

    // 3. screening against a held publisher filter
    if (cfg_.bloom_screening && !screens_.empty()) {
        for (auto it = screens_.begin(); it != screens_.end();) {
            if (it->second.expires_at <= now) {
                it = screens_.erase(it);
                continue;
            }
            if (is_prefix_of(it->second.prefix, interest.name) &&
                !it->second.filter.query(interest.name)) {
                ctr_.screening_drops.add(now);
                return;
            }
            ++it;
        }
    }

    // 4. route lookup
    const FibEntry* route = fib_.longest_match(interest.name);
    if (!route) {
        // 5. no route: notify the incoming face, keep no state
        emit_fnacks(interest.name, FnackReason::NoRoute, {in_face}, now);
        return;
    }

    PitEntry entry;
    entry.name = interest.name;
    entry.interest = interest;
    entry.downstream_faces.push_back(in_face);
    entry.strategy = cfg_.strategy;
    entry.entry_expiry = now + interest.lifetime;
    entry.serial = next_serial_++;
    for (FaceId f : route->upstream_faces)
        if (f != in_face)
            entry.upstreams.push_back(PitUpstream{f, UpstreamStatus::Unsent, 0});
    if (entry.upstreams.empty()) {
        emit_fnacks(interest.name, FnackReason::NoRoute, {in_face}, now);
        return;
    }

    // congestion: only if every upstream face is congested is the interest
    // refused outright
    bool all_congested = true;
    for (const auto& up : entry.upstreams)
        if (eng_.face_queue_len(*this, up.face) < cfg_.congestion_threshold) {
            all_congested = false;
            break;
        }
    if (all_congested) {
        emit_fnacks(interest.name, FnackReason::Congestion, {in_face}, now);
        return;
    }

    auto [it, inserted] = pit_.emplace(key, std::move(entry));
    ctr_.pit_created.add(now);
    std::uint64_t serial = it->second.serial;
    dispatch_interest(it->second, now);
    // entry may have been flushed synchronously (e.g. everything refused)
    auto again = pit_.find(key);
    if (again != pit_.end() && again->second.serial == serial) {
        eng_.at(again->second.entry_expiry, [this, key, serial]() {
            auto it2 = pit_.find(key);
            if (it2 != pit_.end() && it2->second.serial == serial)
                flush_entry(key, FlushCause::Expired);
        });
    }
}

void Router::dispatch_interest(PitEntry& entry, SimTime now) {
    if (entry.strategy == Strategy::Parallel) {
        for (auto& up : entry.upstreams) {
            if (eng_.face_queue_len(*this, up.face) >= cfg_.congestion_threshold) {
                up.status = UpstreamStatus::Fnacked;  // local refusal
                entry.last_fnack_reason = FnackReason::Congestion;
                continue;
            }
            send_on_face(entry, up, now);
        }
    } else {
        while (PitUpstream* up = entry.next_unsent()) {
            if (eng_.face_queue_len(*this, up->face) >= cfg_.congestion_threshold) {
                up->status = UpstreamStatus::Fnacked;
                entry.last_fnack_reason = FnackReason::Congestion;
                continue;
            }
            send_on_face(entry, *up, now);
            break;
        }
    }
    // all faces may have been refused locally
    if (entry.all_terminal()) {
        std::string key = entry.name.to_key();
        if (entry.all_fnacked()) {
            emit_fnacks(entry.name, entry.last_fnack_reason, entry.downstream_faces, now, true);
            flush_entry(key, FlushCause::FnackDown);
        } else {
            flush_entry(key, FlushCause::Silent);
        }
    }
}

void Router::send_on_face(PitEntry& entry, PitUpstream& up, SimTime now) {
    up.status = UpstreamStatus::Awaiting;
    up.deadline = now + cfg_.face_timeout;
    eng_.send(*this, up.face, entry.interest);
    ctr_.interests_out.add(now);
    schedule_face_timer(entry.name.to_key(), entry.serial, up.face, up.deadline);
}

void Router::schedule_face_timer(const std::string& key, std::uint64_t serial, FaceId face,
                                 SimTime deadline) {
    eng_.at(deadline, [this, key, serial, face, deadline]() {
        auto it = pit_.find(key);
        if (it == pit_.end() || it->second.serial != serial)
            return;
        PitUpstream* up = it->second.find_upstream(face);
        if (!up || up->status != UpstreamStatus::Awaiting || up->deadline != deadline)
            return;
        apply_fnack_event(key, face, PitEventKind::Timeout);
    });
}

void Router::apply_fnack_event(const std::string& key, FaceId face, PitEventKind event) {
    auto it = pit_.find(key);
    if (it == pit_.end())
        return;
    PitEntry& entry = it->second;
    SimTime now = eng_.now();
    switch (fnack_decide(entry, face, event)) {
        case FnackAction::TryNext: {
            PitUpstream* next = entry.next_unsent();
            while (next && eng_.face_queue_len(*this, next->face) >= cfg_.congestion_threshold) {
                next->status = UpstreamStatus::Fnacked;
                entry.last_fnack_reason = FnackReason::Congestion;
                next = entry.next_unsent();
            }
            if (next) {
                send_on_face(entry, *next, now);
            } else if (entry.all_terminal()) {
                if (entry.all_fnacked()) {
                    emit_fnacks(entry.name, entry.last_fnack_reason, entry.downstream_faces,
                                now, true);
                    flush_entry(key, FlushCause::FnackDown);
                } else {
                    flush_entry(key, FlushCause::Silent);
                }
            }
            break;
        }
        case FnackAction::ForwardDown:
            emit_fnacks(entry.name, entry.last_fnack_reason, entry.downstream_faces, now, true);
            flush_entry(key, FlushCause::FnackDown);
            break;
        case FnackAction::FlushSilent:
            flush_entry(key, FlushCause::Silent);
            break;
        case FnackAction::Wait:
            break;
    }
}

void Router::emit_fnacks(const Name& name, FnackReason reason,
                         const std::vector<FaceId>& downstream, SimTime now, bool forwarding) {
    for (FaceId face : downstream) {
        FNack fn;
        fn.name = name;
        fn.reason = reason;
        fn.timestamp = now;
        if (cfg_.fnack_auth) {
            fn = mac_fnack(std::move(fn), eng_.face_key(*this, face));
            busy_until_ = std::max(busy_until_, now) + cfg_.hmac_us;
        }
        eng_.send(*this, face, fn);
        (forwarding ? ctr_.fnacks_forwarded : ctr_.fnacks_generated).add(now);
    }
}

bool Router::verify_inbound_content(const PitEntry& entry, const ContentObject& obj,
                                    SimTime now) {
    if (obj.content_type == ContentType::Cnack &&
        !check_cnack_times(obj, now, cfg_.cnack_window, cfg_.clock_skew))
        return false;
    if (!cfg_.enforce_ikb)
        return true;
    switch (verify_scn(entry.interest, obj)) {
        case ScnResult::Match:
            return true;
        case ScnResult::Miss:
            // backup rule: a producer may answer an SCN interest with a
            // signed CNACK when the pinned content is gone
            if (obj.content_type == ContentType::Cnack && entry.interest.key_digest) {
                ctr_.sig_verifications.add(now);
                return verify_ikb(entry.interest, obj);
            }
            return false;
        case ScnResult::NotApplicable:
            if (!entry.interest.key_digest)
                return true;  // no binding to enforce
            ctr_.sig_verifications.add(now);
            return verify_ikb(entry.interest, obj);
    }
    return false;
}

void Router::on_content(const ContentObject& obj, FaceId in_face) {
    (void)in_face;
    SimTime now = eng_.now();

    // collect pending entries this object satisfies (any pending prefix)
    std::vector<std::string> keys;
    std::string key;
    for (const auto& comp : obj.name.components) {
        Name step;  // incremental key building without re-escaping the whole name
        step.components.push_back(comp);
        key += step.to_key();
        if (pit_.count(key))
            keys.push_back(key);
    }
    if (keys.empty()) {
        ctr_.unsolicited_drops.add(now);
        return;
    }

    // verify once per object against the first matching entry's interest
    if (!verify_inbound_content(pit_.find(keys.front())->second, obj, now)) {
        ctr_.poisoned_drops.add(now);
        return;
    }

    for (const auto& k : keys) {
        auto it = pit_.find(k);
        if (it == pit_.end())
            continue;
        for (FaceId face : it->second.downstream_faces) {
            if (obj.content_type == ContentType::BlmFltr &&
                eng_.peer_kind(*this, face) == NodeKind::Consumer) {
                ctr_.blm_withheld.add(now);
                continue;
            }
            eng_.send(*this, face, obj);
            ctr_.content_forwarded.add(now);
        }
        flush_entry(k, FlushCause::Content);
    }

    cs_insert(obj, now);

    if (obj.content_type == ContentType::BlmFltr) {
        try {
            auto [filter, prefix] = BloomFilter::deserialize(obj.payload);
            install_screen_filter(prefix, std::move(filter), now + obj.freshness);
        } catch (const CodecError&) {
            ctr_.malformed_drops.add(now);
        }
    }
}

void Router::on_fnack(const FNack& fnack, FaceId in_face) {
    SimTime now = eng_.now();
    if (cfg_.fnack_auth) {
        busy_until_ = std::max(busy_until_, now) + cfg_.hmac_us;
        if (!verify_fnack(fnack, eng_.face_key(*this, in_face), now, cfg_.fnack_window)) {
            ctr_.fnacks_rejected.add(now);
            return;
        }
    }
    std::string key = fnack.name.to_key();
    auto it = pit_.find(key);
    if (it == pit_.end()) {
        ctr_.unsolicited_drops.add(now);
        return;
    }
    it->second.last_fnack_reason = fnack.reason;
    apply_fnack_event(key, in_face, PitEventKind::FnackVerified);
}

void Router::flush_entry(const std::string& key, FlushCause cause) {
    auto it = pit_.find(key);
    if (it == pit_.end())
        return;
    (void)cause;
    ctr_.pit_flushed.add(eng_.now());
    pit_.erase(it);
}

void Router::expire_tables(SimTime now) {
    for (auto it = cs_.begin(); it != cs_.end();) {
        if (it->second.stale_at <= now) {
            lru_.erase(lru_pos_[it->first]);
            lru_pos_.erase(it->first);
            it = cs_.erase(it);
        } else {
            ++it;
        }
    }
    for (auto it = screens_.begin(); it != screens_.end();) {
        if (it->second.expires_at <= now)
            it = screens_.erase(it);
        else
            ++it;
    }
    std::vector<std::string> expired;
    std::vector<std::pair<std::string, FaceId>> timeouts;
    for (auto& [key, entry] : pit_) {
        if (entry.entry_expiry <= now) {
            expired.push_back(key);
            continue;
        }
        for (auto& up : entry.upstreams)
            if (up.status == UpstreamStatus::Awaiting && up.deadline <= now)
                timeouts.emplace_back(key, up.face);
    }
    for (const auto& key : expired)
        flush_entry(key, FlushCause::Expired);
    for (const auto& [key, face] : timeouts)
        apply_fnack_event(key, face, PitEventKind::Timeout);
}

const PitEntry* Router::pit_find(const Name& name) const {
    auto it = pit_.find(name.to_key());
    return it == pit_.end() ? nullptr : &it->second;
}

const CsEntry* Router::cs_find(const Name& name) const {
    auto it = cs_.find(name.to_key());
    return it == cs_.end() ? nullptr : &it->second;
}

} // namespace nacksim
