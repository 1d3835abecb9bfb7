#include "nacksim/producer.hpp"

#include <algorithm>
#include <cctype>

namespace nacksim {

namespace {

bool all_digits(const Bytes& s) {
    if (s.empty())
        return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

} // namespace

Catalog::Catalog(Name prefix, CatalogKind kind, std::uint64_t initial_size)
    : prefix_(std::move(prefix)), kind_(kind) {
    max_depth_ = prefix_.depth();
    if (kind_ == CatalogKind::Ranks) {
        for (std::uint64_t r = 1; r <= initial_size; ++r)
            names_.insert(prefix_.with(std::to_string(r)).to_key());
        max_depth_ = prefix_.depth() + 1;
    } else if (kind_ == CatalogKind::Sequences) {
        max_depth_ = prefix_.depth() + 2;
    }
}

bool Catalog::published(const Name& name) const {
    if (!is_prefix_of(prefix_, name))
        return false;
    if (kind_ == CatalogKind::Sequences) {
        if (name.depth() != prefix_.depth() + 2)
            return false;
        return all_digits(name.components[prefix_.depth()]) &&
               all_digits(name.components[prefix_.depth() + 1]);
    }
    return names_.count(name.to_key()) > 0;
}

void Catalog::publish(const Name& name, SimTime now) {
    if (kind_ == CatalogKind::Sequences)
        return;  // membership is structural
    names_.insert(name.to_key());
    publish_log_.push_back(now);
    max_depth_ = std::max(max_depth_, name.depth());
    ++version_;
}

void Catalog::unpublish(const Name& name) {
    names_.erase(name.to_key());
    ++version_;
}

Producer::Producer(Engine& eng, std::string label, ProducerConfig cfg, KeyPair key)
    : Node(eng, std::move(label)), cfg_(std::move(cfg)), key_(std::move(key)),
      catalog_(cfg_.prefix, cfg_.catalog, cfg_.catalog_size) {
    if (cfg_.cnack.interval <= 0 || cfg_.cnack.expiration_horizon < cfg_.cnack.interval)
        throw std::invalid_argument("bad cnack policy");
    if (cfg_.gateway)
        gateway_snapshot_ = catalog_.keys();
    auto& m = eng_.metrics();
    ctr_.data_served = m.handle(label_, "data_served");
    ctr_.cnacks_signed = m.handle(label_, "cnacks_signed");
    ctr_.cnacks_memoized = m.handle(label_, "cnacks_memoized");
    ctr_.blooms_published = m.handle(label_, "blooms_published");
    ctr_.implausible_silences = m.handle(label_, "implausible_silences");
    ctr_.out_of_prefix = m.handle(label_, "out_of_prefix");
    ctr_.policy_drops = m.handle(label_, "policy_drops");
    ctr_.publishes = m.handle(label_, "publishes");
    ctr_.data_delay = m.sample_handle(label_, "data_delay");
    ctr_.cnack_delay = m.sample_handle(label_, "cnack_delay");
    ctr_.repo_delay = m.sample_handle(label_, "repo_delay");
    ctr_.nack_delay = m.sample_handle(label_, "nack_delay");
    ctr_.queue_depth = m.sample_handle(label_, "queue_depth");

    // fail fast on a filter that cannot fit one content segment
    if (cfg_.bloom != BloomMode::Off && catalog_.enumerable()) {
        try {
            publish_bloom(cfg_.prefix.with("0"), 0);
        } catch (const CodecError& e) {
            throw std::invalid_argument(std::string("bloom configuration error: ") + e.what());
        }
    }
}

void Producer::publish(const Name& name) {
    catalog_.publish(name, eng_.now());
    ctr_.publishes.add(eng_.now());
}

bool Producer::plausible(const Name& name) const {
    if (cfg_.cnack.plausibility == Plausibility::AcceptAll)
        return true;
    if (name.depth() > catalog_.max_depth() + 1)
        return false;
    static const std::string alphabet =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-._";
    const Bytes& last = name.components.back();
    return std::all_of(last.begin(), last.end(),
                       [](char c) { return alphabet.find(c) != std::string::npos; });
}

ContentObject Producer::make_data(const Name& name) const {
    ContentObject obj;
    obj.name = name;
    obj.payload = "data:" + name.to_uri();
    obj.content_type = ContentType::Data;
    obj.freshness = cfg_.data_freshness;
    obj.timestamp = 0;  // pre-signed at publication
    return sign_content(std::move(obj), key_);
}

ContentObject Producer::make_cnack(const Name& name, SimTime now, const CnackPolicy& policy) {
    SimTime interval_start = (now / policy.interval) * policy.interval;
    if (interval_start != memo_interval_start_) {
        memo_interval_start_ = interval_start;
        cnack_memo_.clear();
    }
    std::string key = name.to_key();
    auto memo = cnack_memo_.find(key);
    if (memo != cnack_memo_.end()) {
        ctr_.cnacks_memoized.add(now);
        return memo->second;
    }
    ContentObject obj;
    obj.name = name;
    obj.name.implicit_digest.reset();  // echoes the interest name, no digest
    obj.payload.clear();
    obj.content_type = ContentType::Cnack;
    obj.freshness = policy.expiration_horizon;
    obj.timestamp = interval_start;
    obj.expiration = interval_start + policy.expiration_horizon;
    obj = sign_content(std::move(obj), key_);
    ctr_.cnacks_signed.add(now);
    note_signature(now);

    // every emitted cNACK must be signed, interval-quantized, expiring and
    // plausibility-gated; callers reach here only after the plausibility check
    bool ok = obj.signature != Digest{} && obj.timestamp % policy.interval == 0 &&
              obj.expiration.has_value() && plausible(name);
    if (!ok)
        ++requirement_violations_;

    cnack_memo_.emplace(std::move(key), obj);
    return obj;
}

Name Producer::shard_prefix(const Name& name) const {
    if (cfg_.bloom_shard_components <= 0)
        return cfg_.prefix;
    Name shard = cfg_.prefix;
    std::size_t want = cfg_.prefix.depth() + static_cast<std::size_t>(cfg_.bloom_shard_components);
    for (std::size_t i = cfg_.prefix.depth(); i < want && i < name.depth(); ++i)
        shard.components.push_back(name.components[i]);
    return shard;
}

const BloomFilter* Producer::shard_filter(const Name& name, SimTime now) {
    if (!catalog_.enumerable())
        throw std::runtime_error("bloom publication requires an enumerable catalog");
    Name shard = shard_prefix(name);
    std::string key = shard.to_key();
    std::uint64_t rotation =
        cfg_.bloom_rotate > 0 ? static_cast<std::uint64_t>(now / cfg_.bloom_rotate) : 0;
    std::uint64_t seed = mix_seed(eng_.seed(), label_ + "/bloom/" + key) ^ rotation;

    auto it = filters_.find(key);
    if (it != filters_.end() && it->second.version == catalog_.version() &&
        it->second.seed == seed)
        return &it->second.filter;

    std::uint64_t n = 0;
    catalog_.for_each([&](const Name& published) {
        if (is_prefix_of(shard, published))
            ++n;
    });
    BloomParams params;
    params.m = cfg_.bloom_bits;
    params.n = n;
    params.k = n > 0 ? optimal_k(params.m, n) : 1;
    params.seed = seed;
    BloomFilter filter(params);
    catalog_.for_each([&](const Name& published) {
        if (is_prefix_of(shard, published))
            filter.insert(published);
    });
    auto& slot = filters_[key];
    slot = BuiltFilter{catalog_.version(), seed, std::move(filter)};
    return &slot.filter;
}

ContentObject Producer::publish_bloom(const Name& response_name, SimTime now) {
    const BloomFilter* filter = shard_filter(response_name, now);
    ContentObject obj;
    obj.name = response_name;
    obj.payload = filter->serialize(shard_prefix(response_name));
    obj.content_type = ContentType::BlmFltr;
    obj.freshness = freshness_for(catalog_.publish_log(), cfg_.bloom_tau, now);
    obj.timestamp = now;
    obj = sign_content(std::move(obj), key_);
    encode(obj, cfg_.max_segment);  // enforce the single-segment bound
    note_signature(now);
    return obj;
}

std::pair<BloomFilter, SimTime> Producer::filter_snapshot(const Name& name, SimTime now) {
    const BloomFilter* f = shard_filter(name, now);
    return {*f, freshness_for(catalog_.publish_log(), cfg_.bloom_tau, now)};
}

bool Producer::bloom_active(SimTime now) const {
    if (cfg_.bloom == BloomMode::On)
        return true;
    if (cfg_.bloom == BloomMode::Auto)
        return now < bloom_active_until_;
    return false;
}

void Producer::note_signature(SimTime now) {
    if (cfg_.bloom != BloomMode::Auto)
        return;
    recent_signs_.push_back(now);
    while (!recent_signs_.empty() && recent_signs_.front() < now - kUsPerSec)
        recent_signs_.pop_front();
    if (recent_signs_.size() >= cfg_.bloom_load_threshold)
        bloom_active_until_ = now + cfg_.bloom_active_hold;
}

GatewayQueue Producer::gateway_dispatch(const Interest& interest) const {
    return gateway_snapshot_.count(interest.name.to_key()) ? GatewayQueue::Repo
                                                           : GatewayQueue::Nack;
}

void Producer::on_packet(const Packet& pkt, FaceId in_face) {
    const auto* interest = std::get_if<Interest>(&pkt);
    if (!interest)
        return;  // producers only consume interests
    SimTime now = eng_.now();
    Job job{*interest, in_face, now};
    if (cfg_.gateway && gateway_dispatch(*interest) == GatewayQueue::Repo)
        enqueue(repo_q_, std::move(job), now);
    else
        enqueue(main_q_, std::move(job), now);
}

void Producer::enqueue(ServerQueue& sq, Job job, SimTime now) {
    ctr_.queue_depth.record(now, static_cast<SimTime>(sq.q.size()));
    if (cfg_.queue_capacity > 0 && sq.q.size() >= cfg_.queue_capacity) {
        ctr_.policy_drops.add(now);
        return;
    }
    if (!sq.busy) {
        begin_service(sq, std::move(job), now);
    } else {
        sq.q.push_back(std::move(job));
    }
}

void Producer::begin_service(ServerQueue& sq, Job job, SimTime now) {
    sq.busy = true;

    ReplyKind kind = ReplyKind::Silence;
    ContentObject reply;
    SimTime service = cfg_.service.lookup_cost;

    const Name& name = job.interest.name;
    if (!is_prefix_of(cfg_.prefix, name)) {
        ctr_.out_of_prefix.add(now);
    } else if (catalog_.published(name)) {
        reply = make_data(name);  // pre-signed; only the lookup is charged
        kind = ReplyKind::Data;
    } else if (plausible(name)) {
        if (bloom_active(now)) {
            reply = publish_bloom(name, now);
            kind = ReplyKind::Bloom;
            service += cfg_.service.sign_cost;
        } else {
            std::int64_t before = ctr_.cnacks_signed.total();
            reply = make_cnack(name, now, cfg_.cnack);
            kind = ReplyKind::Cnack;
            if (ctr_.cnacks_signed.total() > before)
                service += cfg_.service.sign_cost;
        }
    } else {
        ctr_.implausible_silences.add(now);
    }

    bool is_repo = cfg_.gateway && &sq == &repo_q_;
    eng_.after(service, [this, &sq, job = std::move(job), reply = std::move(reply), kind,
                         is_repo]() {
        SimTime done = eng_.now();
        SimTime delay = done - job.arrival;
        switch (kind) {
            case ReplyKind::Data:
                ctr_.data_served.add(done);
                ctr_.data_delay.record(done, delay);
                data_delay_hist_.record(delay);
                eng_.send(*this, job.face, reply);
                break;
            case ReplyKind::Cnack:
                ctr_.cnack_delay.record(done, delay);
                eng_.send(*this, job.face, reply);
                break;
            case ReplyKind::Bloom:
                ctr_.blooms_published.add(done);
                eng_.send(*this, job.face, reply);
                break;
            case ReplyKind::Silence:
                break;
        }
        if (cfg_.gateway) {
            if (is_repo)
                ctr_.repo_delay.record(done, delay);
            else
                ctr_.nack_delay.record(done, delay);
        }
        if (!sq.q.empty()) {
            Job next = std::move(sq.q.front());
            sq.q.pop_front();
            begin_service(sq, std::move(next), done);
        } else {
            sq.busy = false;
        }
    });
}

} // namespace nacksim
