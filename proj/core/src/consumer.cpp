#include "nacksim/consumer.hpp"

#include <algorithm>
#include <cmath>

namespace nacksim {

ZipfSampler::ZipfSampler(std::uint32_t n, double alpha) {
    cdf_.resize(n);
    double sum = 0.0;
    for (std::uint32_t r = 1; r <= n; ++r) {
        sum += 1.0 / std::pow(static_cast<double>(r), alpha);
        cdf_[r - 1] = sum;
    }
    for (auto& v : cdf_)
        v /= sum;
}

std::uint32_t ZipfSampler::operator()(std::mt19937_64& rng) const {
    double u = uniform01(rng);
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end())
        --it;
    return static_cast<std::uint32_t>(it - cdf_.begin()) + 1;
}

double ZipfSampler::rank_probability(std::uint32_t rank) const {
    if (rank < 1 || rank > cdf_.size())
        return 0.0;
    return rank == 1 ? cdf_[0] : cdf_[rank - 1] - cdf_[rank - 2];
}

Consumer::Consumer(Engine& eng, std::string label, ConsumerProfile profile)
    : Node(eng, std::move(label)), profile_(std::move(profile)),
      rng_(eng.make_rng("consumer/" + label_)) {
    if (profile_.rate <= 0)
        throw std::invalid_argument("consumer rate must be > 0");
    if (profile_.kind == ConsumerKind::BenignZipf) {
        if (profile_.zipf_alpha <= 0)
            throw std::invalid_argument("zipf_alpha must be > 0");
        zipf_.emplace(profile_.catalog_size, profile_.zipf_alpha);
    }
    period_ = static_cast<SimTime>(std::llround(kUsPerSec / profile_.rate));
    if (period_ <= 0)
        period_ = 1;
    // aggregate series shared by every consumer; per-node totals land in the
    // summary at the end of a run
    auto& m = eng_.metrics();
    ctr_.sent = m.handle("consumers", "interests_sent");
    ctr_.data_received = m.handle("consumers", "data_received");
    ctr_.not_found = m.handle("consumers", "not_found");
    ctr_.unreachable = m.handle("consumers", "unreachable");
    ctr_.abandoned = m.handle("consumers", "abandoned");
    ctr_.retransmissions = m.handle("consumers", "retransmissions");
    ctr_.unknown = m.handle("consumers", "unknown_responses");
    ctr_.rtt = m.sample_handle("consumers", "rtt");
}

void Consumer::start() {
    if (profile_.start_offset > 0)
        eng_.after(profile_.start_offset, [this]() { send_tick(); });
    else
        send_tick();
}

void Consumer::send_tick() {
    transmit(next_interest(eng_.now()), false);
    eng_.after(period_, [this]() { send_tick(); });
}

Name Consumer::make_malicious_name(SimTime now) {
    (void)now;
    Name name = profile_.producer_prefix;
    std::uint32_t len = profile_.suffix_len > 0 ? profile_.suffix_len : profile_.catalog_depth;
    if (!profile_.malicious_plausible)
        len += 3;  // depth violation on top of the alphabet violation
    static const std::string plausible_chars = "abcdefghijklmnopqrstuvwxyz";
    static const std::string junk_chars = "$&F(?%#@!";
    const std::string& chars = profile_.malicious_plausible ? plausible_chars : junk_chars;
    for (std::uint32_t i = 0; i < len; ++i) {
        Bytes comp;
        // leading letter/symbol keeps the component disjoint from the
        // all-numeric published names
        comp.push_back(chars[uniform_below(rng_, chars.size())]);
        for (int j = 0; j < 7; ++j)
            comp.push_back(chars[uniform_below(rng_, chars.size())]);
        name.components.push_back(std::move(comp));
    }
    return name;
}

Interest Consumer::next_interest(SimTime now) {
    Interest interest;
    switch (profile_.kind) {
        case ConsumerKind::BenignBasic:
            interest.name = profile_.request_namespace.with(std::to_string(++seq_));
            break;
        case ConsumerKind::BenignZipf:
            interest.name = profile_.producer_prefix.with(std::to_string((*zipf_)(rng_)));
            break;
        case ConsumerKind::Malicious:
            interest.name = make_malicious_name(now);
            break;
    }
    interest.key_digest = profile_.key_digest;
    interest.lifetime = profile_.lifetime;
    interest.origin_face = 0;
    return interest;
}

void Consumer::transmit(const Interest& interest, bool is_retx) {
    SimTime now = eng_.now();
    ctr_.sent.add(now);
    ++totals_.sent;
    if (is_retx) {
        ctr_.retransmissions.add(now);
        ++totals_.retransmissions;
    }
    if (profile_.kind != ConsumerKind::Malicious) {
        std::string key = interest.name.to_key();
        auto it = outstanding_.find(key);
        if (it == outstanding_.end()) {
            Outstanding o;
            o.interest = interest;
            o.first_sent = now;
            o.retx_left = profile_.retx_limit;
            o.serial = next_serial_++;
            it = outstanding_.emplace(std::move(key), std::move(o)).first;
        }
        arm_timer(it->first, it->second.serial);
    }
    eng_.send(*this, 0, interest);
}

void Consumer::arm_timer(const std::string& key, std::uint64_t serial) {
    eng_.after(profile_.lifetime, [this, key, serial]() {
        auto it = outstanding_.find(key);
        if (it == outstanding_.end() || it->second.serial != serial)
            return;
        if (it->second.retx_left > 0) {
            --it->second.retx_left;
            it->second.serial = next_serial_++;
            transmit(it->second.interest, true);
        } else {
            ctr_.abandoned.add(eng_.now());
            ++totals_.abandoned;
            outstanding_.erase(it);
        }
    });
}

void Consumer::on_packet(const Packet& pkt, FaceId in_face) {
    (void)in_face;
    SimTime now = eng_.now();
    const Name& name = packet_name(pkt);

    // match the outstanding interest whose name is a prefix of the response
    std::map<std::string, Outstanding>::iterator match = outstanding_.end();
    std::string key;
    for (const auto& comp : name.components) {
        Name step;
        step.components.push_back(comp);
        key += step.to_key();
        auto it = outstanding_.find(key);
        if (it != outstanding_.end()) {
            match = it;
            break;
        }
    }
    if (match == outstanding_.end()) {
        if (profile_.kind != ConsumerKind::Malicious) {
            ctr_.unknown.add(now);
            ++totals_.unknown_responses;
        }
        return;
    }

    if (const auto* obj = std::get_if<ContentObject>(&pkt)) {
        if (obj->content_type == ContentType::Data || obj->content_type == ContentType::Key) {
            SimTime rtt = now - match->second.first_sent;
            ctr_.data_received.add(now);
            ctr_.rtt.record(now, rtt);
            ++totals_.data_received;
            totals_.rtt_sum_us += rtt;
            outstanding_.erase(match);
        } else if (obj->content_type == ContentType::Cnack) {
            // not found: never retransmit this name
            ctr_.not_found.add(now);
            ++totals_.not_found;
            outstanding_.erase(match);
        }
        // BLM-FLTR objects are withheld upstream; receiving one is counted as unknown
    } else if (std::get_if<FNack>(&pkt)) {
        ctr_.unreachable.add(now);
        ++totals_.unreachable;
        if (profile_.fnack_retx && match->second.retx_left > 0) {
            --match->second.retx_left;
            match->second.serial = next_serial_++;
            transmit(match->second.interest, true);
        } else {
            outstanding_.erase(match);
        }
    }
}

} // namespace nacksim
