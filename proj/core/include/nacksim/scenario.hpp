#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nacksim/time.hpp"

namespace nacksim {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Declarative run description, read from a line-oriented sectioned key=value
// file. Every field has a default; `to_text` dumps the fully resolved form,
// which doubles as the run manifest and re-executes bit-identically.
struct Scenario {
    // [run]
    double duration_s = 60;
    std::uint64_t seed = 1;
    double bucket_s = 1.0;
    bool fnack_auth = true;
    bool enforce_ikb = true;

    // [topology] star: consumers - router chain - producer(s);
    // multi_upstream: consumers - core router - relays - producer
    std::string kind = "star";
    std::uint64_t consumers = 1;
    std::uint64_t router_count = 1;
    std::uint64_t producer_count = 1;
    double link_delay_ms = 10;
    std::uint64_t queue_capacity = 1000;
    double consumer_tx_us = 0;
    double producer_tx_us = 0;
    double backbone_tx_us = 0;
    std::vector<std::string> relays;  // route | noroute | blackhole per relay

    // [strategy]
    std::string strategy = "PARALLEL";
    double face_timeout_s = 1;
    std::uint64_t congestion_threshold = 100;

    // [router]
    std::uint64_t cs_capacity = 10000;
    double proc_us = 2;
    double hmac_us = 1;
    bool bloom_screening = true;
    bool bloom_preload = false;

    // [crypto]
    double cnack_window_s = 60;
    double fnack_window_s = 5;
    double clock_skew_s = 0;

    // [producer]
    std::string prefix = "/ndn/a";
    std::string catalog = "auto";  // auto | ranks | sequences | list
    std::uint64_t catalog_size = 1000;
    double data_freshness_s = 60;
    double sign_cost_ms = 2.0;
    double lookup_cost_ms = 0.05;
    double cnack_interval_s = 1.0;
    double cnack_horizon_s = 60;
    std::string plausibility = "depth_alphabet";  // accept | depth_alphabet
    std::string bloom = "off";                    // off | on | auto
    std::uint64_t bloom_bits = 63488;
    double bloom_tau_s = 60;
    std::uint64_t bloom_load_threshold = 100;
    std::int64_t bloom_shard_components = 0;
    double bloom_rotate_s = 0;
    std::uint64_t max_segment = 8192;
    bool gateway = false;
    std::uint64_t producer_queue_capacity = 0;

    // [consumers]
    std::string benign_kind = "BASIC";  // BASIC | ZIPF
    double benign_rate = 10;
    double malicious_rate = 100;
    double mcp = 0;
    double zipf_alpha = 1.0;
    std::int64_t retx_limit = 3;
    double lifetime_s = 4;
    std::uint64_t malicious_suffix_len = 0;
    bool malicious_plausible = true;
    bool fnack_retx = false;
    std::string attack_prefix;  // empty = the producer prefix

    // [growth]
    std::string growth_add = "none";  // none | benign | malicious
    double growth_per_second = 1;
    double growth_stop_s = 0;

    // [publish] repeated "event = <t_s> <name>" lines
    std::vector<std::pair<double, std::string>> publish_events;

    // [sweep]
    std::string sweep_axis;
    std::vector<std::string> sweep_values;

    std::string source_name = "<inline>";
};

Scenario parse_scenario_text(const std::string& text, const std::string& source_name);
Scenario load_scenario(const std::string& path);

// key is "section.key", identical to the file syntax; applied after parsing
// (CLI --set and sweep axes reuse this).
void apply_override(Scenario& sc, const std::string& key, const std::string& value);

void validate(const Scenario& sc);  // throws ScenarioError

// Fully resolved dump, parseable by parse_scenario_text. Excludes [sweep].
std::string to_text(const Scenario& sc);

} // namespace nacksim
