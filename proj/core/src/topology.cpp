#include "nacksim/topology.hpp"

#include <cmath>

namespace nacksim {

namespace {

RouterConfig router_config(const Scenario& sc) {
    RouterConfig cfg;
    cfg.strategy = sc.strategy == "SEQUENTIAL" ? Strategy::Sequential : Strategy::Parallel;
    cfg.face_timeout = from_sec(sc.face_timeout_s);
    cfg.congestion_threshold = sc.congestion_threshold;
    cfg.cs_capacity = sc.cs_capacity;
    cfg.enforce_ikb = sc.enforce_ikb;
    cfg.fnack_auth = sc.fnack_auth;
    cfg.cnack_window = TimeWindow{from_sec(sc.cnack_window_s)};
    cfg.fnack_window = TimeWindow{from_sec(sc.fnack_window_s)};
    cfg.clock_skew = from_sec(sc.clock_skew_s);
    cfg.proc_us = static_cast<SimTime>(std::llround(sc.proc_us));
    cfg.hmac_us = static_cast<SimTime>(std::llround(sc.hmac_us));
    cfg.bloom_screening = sc.bloom_screening;
    return cfg;
}

ProducerConfig producer_config(const Scenario& sc, const Name& prefix) {
    ProducerConfig cfg;
    cfg.prefix = prefix;
    if (sc.catalog == "ranks")
        cfg.catalog = CatalogKind::Ranks;
    else if (sc.catalog == "sequences")
        cfg.catalog = CatalogKind::Sequences;
    else if (sc.catalog == "list")
        cfg.catalog = CatalogKind::List;
    else  // auto: sequences for BASIC workloads, ranks for ZIPF
        cfg.catalog = sc.benign_kind == "BASIC" ? CatalogKind::Sequences : CatalogKind::Ranks;
    cfg.catalog_size = sc.catalog_size;
    cfg.data_freshness = from_sec(sc.data_freshness_s);
    cfg.service.sign_cost = from_ms(sc.sign_cost_ms);
    cfg.service.lookup_cost = from_ms(sc.lookup_cost_ms);
    cfg.cnack.interval = from_sec(sc.cnack_interval_s);
    cfg.cnack.expiration_horizon = from_sec(sc.cnack_horizon_s);
    cfg.cnack.plausibility = sc.plausibility == "accept" ? Plausibility::AcceptAll
                                                         : Plausibility::DepthAlphabet;
    if (sc.bloom == "on")
        cfg.bloom = BloomMode::On;
    else if (sc.bloom == "auto")
        cfg.bloom = BloomMode::Auto;
    else
        cfg.bloom = BloomMode::Off;
    cfg.bloom_bits = sc.bloom_bits;
    cfg.bloom_tau = from_sec(sc.bloom_tau_s);
    cfg.bloom_load_threshold = sc.bloom_load_threshold;
    cfg.bloom_rotate = from_sec(sc.bloom_rotate_s);
    cfg.bloom_shard_components = static_cast<int>(sc.bloom_shard_components);
    cfg.max_segment = sc.max_segment;
    cfg.gateway = sc.gateway;
    cfg.queue_capacity = sc.producer_queue_capacity;
    return cfg;
}

LinkConfig link_config(const Scenario& sc, double tx_us) {
    LinkConfig cfg;
    cfg.delay = from_ms(sc.link_delay_ms);
    cfg.tx_us = static_cast<SimTime>(std::llround(tx_us));
    cfg.queue_capacity = sc.queue_capacity;
    return cfg;
}

} // namespace

Topology build_topology(Engine& eng, const Scenario& sc) {
    Topology topo;
    RouterConfig rcfg = router_config(sc);

    for (std::uint64_t i = 0; i < sc.router_count; ++i)
        topo.routers.push_back(&eng.add_node<Router>("r" + std::to_string(i), rcfg));
    topo.core = topo.routers.front();
    for (std::size_t i = 0; i + 1 < topo.routers.size(); ++i)
        eng.connect(*topo.routers[i], *topo.routers[i + 1], link_config(sc, sc.backbone_tx_us));

    for (std::uint64_t p = 0; p < sc.producer_count; ++p) {
        Name prefix = parse_name(sc.prefix);
        if (p > 0)
            prefix = prefix.with("p" + std::to_string(p));
        KeyPair key = make_keypair(mix_seed(eng.seed(), "producer/" + prefix.to_key()));
        topo.registry.add(prefix, key);
        auto& producer =
            eng.add_node<Producer>("p" + std::to_string(p), producer_config(sc, prefix), key);
        topo.producers.push_back(&producer);
    }

    Router* edge = topo.routers.back();
    if (sc.kind == "multi_upstream") {
        // core router fans out to relays; each routable relay reaches producer 0
        std::vector<FaceId> core_upstreams;
        for (std::size_t i = 0; i < sc.relays.size(); ++i) {
            const std::string& mode = sc.relays[i];
            Node* relay = nullptr;
            if (mode == "blackhole") {
                relay = &eng.add_node<Sink>("relay" + std::to_string(i));
            } else {
                auto& r = eng.add_node<Router>("relay" + std::to_string(i), rcfg);
                relay = &r;
            }
            eng.connect(*edge, *relay, link_config(sc, sc.backbone_tx_us));
            core_upstreams.push_back(static_cast<FaceId>(edge->face_count() - 1));
            eng.connect(*relay, *topo.producers[0], link_config(sc, sc.producer_tx_us));
            if (mode == "route") {
                auto* rr = dynamic_cast<Router*>(relay);
                rr->add_route(topo.producers[0]->config().prefix,
                              {static_cast<FaceId>(rr->face_count() - 1)});
            }
            topo.relays.push_back(relay);
        }
        edge->add_route(topo.producers[0]->config().prefix, core_upstreams);
    } else {
        for (Producer* producer : topo.producers) {
            eng.connect(*edge, *producer, link_config(sc, sc.producer_tx_us));
            FaceId face = static_cast<FaceId>(edge->face_count() - 1);
            edge->add_route(producer->config().prefix, {face});
        }
    }
    // chain routers route towards the edge: ri's face to r(i+1) is its first
    // face for r0 and its second face otherwise (first goes to r(i-1))
    for (std::size_t i = 0; i + 1 < topo.routers.size(); ++i) {
        FaceId next_face = static_cast<FaceId>(i == 0 ? 0 : 1);
        for (Producer* producer : topo.producers)
            topo.routers[i]->add_route(producer->config().prefix, {next_face});
    }

    for (const auto& [t, name] : sc.publish_events) {
        Producer* producer = topo.producers.front();
        Name n = parse_name(name);
        eng.at(from_sec(t), [producer, n]() { producer->publish(n); });
    }

    std::uint64_t malicious = static_cast<std::uint64_t>(std::llround(sc.mcp * sc.consumers));
    std::uint64_t benign = sc.consumers - malicious;
    for (std::uint64_t i = 0; i < benign; ++i)
        add_consumer(eng, topo, sc, sc.benign_kind == "ZIPF" ? ConsumerKind::BenignZipf
                                                             : ConsumerKind::BenignBasic);
    for (std::uint64_t i = 0; i < malicious; ++i)
        add_consumer(eng, topo, sc, ConsumerKind::Malicious);

    if (sc.bloom_preload) {
        Producer* producer = topo.producers.front();
        auto [filter, freshness] = producer->filter_snapshot(producer->config().prefix, 0);
        for (Router* r : topo.routers)
            r->install_screen_filter(producer->config().prefix, filter, freshness);
    }
    return topo;
}

Consumer& add_consumer(Engine& eng, Topology& topo, const Scenario& sc, ConsumerKind kind) {
    std::uint64_t id = topo.next_consumer_id++;
    ConsumerProfile profile;
    profile.kind = kind;
    profile.zipf_alpha = sc.zipf_alpha;
    profile.catalog_size = static_cast<std::uint32_t>(sc.catalog_size);
    profile.suffix_len = static_cast<std::uint32_t>(sc.malicious_suffix_len);
    profile.retx_limit = static_cast<int>(sc.retx_limit);
    profile.lifetime = from_sec(sc.lifetime_s);
    profile.malicious_plausible = sc.malicious_plausible;
    profile.fnack_retx = sc.fnack_retx;

    const Producer& producer = *topo.producers.front();
    std::string label;
    if (kind == ConsumerKind::Malicious) {
        label = "m" + std::to_string(id);
        profile.rate = sc.malicious_rate;
        Name target = sc.attack_prefix.empty() ? producer.config().prefix
                                               : parse_name(sc.attack_prefix);
        profile.producer_prefix = target;
        if (const KeyPair* kp = topo.registry.lookup(target))
            profile.key_digest = kp->digest;
        else
            profile.key_digest = make_keypair(mix_seed(eng.seed(), "attack-target")).digest;
        profile.catalog_depth =
            producer.config().catalog == CatalogKind::Sequences ? 2 : 1;
    } else {
        label = "b" + std::to_string(id);
        profile.rate = sc.benign_rate;
        profile.producer_prefix = producer.config().prefix;
        profile.request_namespace = producer.config().prefix.with(std::to_string(id));
        profile.key_digest = producer.key().digest;
        profile.catalog_depth =
            producer.config().catalog == CatalogKind::Sequences ? 2 : 1;
    }

    // low-discrepancy start offsets de-synchronize same-rate consumers
    // (consumer 0 starts at zero; spacing within a consumer stays exact)
    SimTime period = static_cast<SimTime>(std::llround(kUsPerSec / profile.rate));
    double phase = std::fmod(static_cast<double>(id) * 0.6180339887498949, 1.0);
    profile.start_offset = static_cast<SimTime>(phase * static_cast<double>(period));

    auto& consumer = eng.add_node<Consumer>(label, profile);
    LinkConfig link;
    link.delay = from_ms(sc.link_delay_ms);
    link.tx_us = static_cast<SimTime>(std::llround(sc.consumer_tx_us));
    link.queue_capacity = sc.queue_capacity;
    eng.connect(consumer, *topo.core, link);
    topo.consumers.push_back(&consumer);
    if (kind == ConsumerKind::Malicious)
        ++topo.malicious_count;
    else
        ++topo.benign_count;
    return consumer;
}

void schedule_population_growth(Engine& eng, Topology& topo, const Scenario& sc) {
    if (sc.growth_add == "none" || sc.growth_stop_s <= 0)
        return;
    ConsumerKind kind = sc.growth_add == "malicious" ? ConsumerKind::Malicious
                        : sc.benign_kind == "ZIPF"   ? ConsumerKind::BenignZipf
                                                     : ConsumerKind::BenignBasic;
    SimTime step = from_sec(1.0 / sc.growth_per_second);
    SimTime stop = from_sec(sc.growth_stop_s);
    Topology* topop = &topo;
    const Scenario* scp = &sc;
    for (SimTime t = step; t <= stop; t += step) {
        eng.at(t, [&eng, topop, scp, kind]() { add_consumer(eng, *topop, *scp, kind); });
    }
}

} // namespace nacksim
