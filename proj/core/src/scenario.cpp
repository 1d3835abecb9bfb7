#include "nacksim/scenario.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "nacksim/name.hpp"

namespace nacksim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        std::string item = trim(next == std::string::npos ? s.substr(pos)
                                                          : s.substr(pos, next - pos));
        if (!item.empty())
            out.push_back(item);
        if (next == std::string::npos)
            break;
        pos = next + 1;
    }
    return out;
}

double parse_double(const std::string& v) {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size())
        throw std::invalid_argument("not a number: " + v);
    return d;
}

std::uint64_t parse_u64(const std::string& v) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw std::invalid_argument("not an unsigned integer: " + v);
    return out;
}

std::int64_t parse_i64(const std::string& v) {
    std::int64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw std::invalid_argument("not an integer: " + v);
    return out;
}

bool parse_bool(const std::string& v) {
    if (v == "on" || v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "off" || v == "false" || v == "0" || v == "no")
        return false;
    throw std::invalid_argument("not a boolean (on/off): " + v);
}

using Setter = std::function<void(Scenario&, const std::string&)>;
using Getter = std::function<std::string(const Scenario&)>;

struct Field {
    Setter set;
    Getter get;
};

std::string fmt_double(double d) {
    std::ostringstream os;
    os.precision(17);
    os << d;
    return os.str();
}

const std::map<std::string, Field>& field_table() {
    static const std::map<std::string, Field> table = [] {
        std::map<std::string, Field> t;
        auto dbl = [&](const std::string& key, double Scenario::*mem) {
            t[key] = Field{[mem](Scenario& s, const std::string& v) { s.*mem = parse_double(v); },
                           [mem](const Scenario& s) { return fmt_double(s.*mem); }};
        };
        auto u64 = [&](const std::string& key, std::uint64_t Scenario::*mem) {
            t[key] = Field{[mem](Scenario& s, const std::string& v) { s.*mem = parse_u64(v); },
                           [mem](const Scenario& s) { return std::to_string(s.*mem); }};
        };
        auto i64 = [&](const std::string& key, std::int64_t Scenario::*mem) {
            t[key] = Field{[mem](Scenario& s, const std::string& v) { s.*mem = parse_i64(v); },
                           [mem](const Scenario& s) { return std::to_string(s.*mem); }};
        };
        auto boolean = [&](const std::string& key, bool Scenario::*mem) {
            t[key] = Field{[mem](Scenario& s, const std::string& v) { s.*mem = parse_bool(v); },
                           [mem](const Scenario& s) { return s.*mem ? "on" : "off"; }};
        };
        auto str = [&](const std::string& key, std::string Scenario::*mem) {
            t[key] = Field{[mem](Scenario& s, const std::string& v) { s.*mem = v; },
                           [mem](const Scenario& s) { return s.*mem; }};
        };

        dbl("run.duration_s", &Scenario::duration_s);
        u64("run.seed", &Scenario::seed);
        dbl("run.bucket_s", &Scenario::bucket_s);
        boolean("run.fnack_auth", &Scenario::fnack_auth);
        boolean("run.enforce_ikb", &Scenario::enforce_ikb);

        str("topology.kind", &Scenario::kind);
        u64("topology.consumers", &Scenario::consumers);
        u64("topology.router_count", &Scenario::router_count);
        u64("topology.producer_count", &Scenario::producer_count);
        dbl("topology.link_delay_ms", &Scenario::link_delay_ms);
        u64("topology.queue_capacity", &Scenario::queue_capacity);
        dbl("topology.consumer_tx_us", &Scenario::consumer_tx_us);
        dbl("topology.producer_tx_us", &Scenario::producer_tx_us);
        dbl("topology.backbone_tx_us", &Scenario::backbone_tx_us);
        t["topology.relays"] = Field{
            [](Scenario& s, const std::string& v) { s.relays = split_list(v); },
            [](const Scenario& s) {
                std::string out;
                for (const auto& r : s.relays)
                    out += (out.empty() ? "" : ",") + r;
                return out;
            }};

        str("strategy.mode", &Scenario::strategy);
        dbl("strategy.face_timeout_s", &Scenario::face_timeout_s);
        u64("strategy.congestion_threshold", &Scenario::congestion_threshold);

        u64("router.cs_capacity", &Scenario::cs_capacity);
        dbl("router.proc_us", &Scenario::proc_us);
        dbl("router.hmac_us", &Scenario::hmac_us);
        boolean("router.bloom_screening", &Scenario::bloom_screening);
        boolean("router.bloom_preload", &Scenario::bloom_preload);

        dbl("crypto.cnack_window_s", &Scenario::cnack_window_s);
        dbl("crypto.fnack_window_s", &Scenario::fnack_window_s);
        dbl("crypto.clock_skew_s", &Scenario::clock_skew_s);

        str("producer.prefix", &Scenario::prefix);
        str("producer.catalog", &Scenario::catalog);
        u64("producer.catalog_size", &Scenario::catalog_size);
        dbl("producer.data_freshness_s", &Scenario::data_freshness_s);
        dbl("producer.sign_cost_ms", &Scenario::sign_cost_ms);
        dbl("producer.lookup_cost_ms", &Scenario::lookup_cost_ms);
        dbl("producer.cnack_interval_s", &Scenario::cnack_interval_s);
        dbl("producer.cnack_horizon_s", &Scenario::cnack_horizon_s);
        str("producer.plausibility", &Scenario::plausibility);
        str("producer.bloom", &Scenario::bloom);
        u64("producer.bloom_bits", &Scenario::bloom_bits);
        dbl("producer.bloom_tau_s", &Scenario::bloom_tau_s);
        u64("producer.bloom_load_threshold", &Scenario::bloom_load_threshold);
        i64("producer.bloom_shard_components", &Scenario::bloom_shard_components);
        dbl("producer.bloom_rotate_s", &Scenario::bloom_rotate_s);
        u64("producer.max_segment", &Scenario::max_segment);
        boolean("producer.gateway", &Scenario::gateway);
        u64("producer.queue_capacity", &Scenario::producer_queue_capacity);

        str("consumers.benign_kind", &Scenario::benign_kind);
        dbl("consumers.benign_rate", &Scenario::benign_rate);
        dbl("consumers.malicious_rate", &Scenario::malicious_rate);
        dbl("consumers.mcp", &Scenario::mcp);
        dbl("consumers.zipf_alpha", &Scenario::zipf_alpha);
        i64("consumers.retx_limit", &Scenario::retx_limit);
        dbl("consumers.lifetime_s", &Scenario::lifetime_s);
        u64("consumers.malicious_suffix_len", &Scenario::malicious_suffix_len);
        boolean("consumers.malicious_plausible", &Scenario::malicious_plausible);
        boolean("consumers.fnack_retx", &Scenario::fnack_retx);
        str("consumers.attack_prefix", &Scenario::attack_prefix);

        str("growth.add", &Scenario::growth_add);
        dbl("growth.per_second", &Scenario::growth_per_second);
        dbl("growth.stop_s", &Scenario::growth_stop_s);

        str("sweep.axis", &Scenario::sweep_axis);
        t["sweep.values"] = Field{
            [](Scenario& s, const std::string& v) { s.sweep_values = split_list(v); },
            [](const Scenario& s) {
                std::string out;
                for (const auto& r : s.sweep_values)
                    out += (out.empty() ? "" : ",") + r;
                return out;
            }};
        return t;
    }();
    return table;
}

} // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& source_name) {
    Scenario sc;
    sc.source_name = source_name;
    std::istringstream in(text);
    std::string line;
    std::string section;
    bool saw_topology = false;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw ScenarioError(source_name + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#')
            continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                fail("unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty())
                fail("empty section name");
            if (section == "topology")
                saw_topology = true;
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            fail("expected key = value");
        if (section.empty())
            fail("key outside any [section]");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (section == "publish" && key == "event") {
            std::istringstream ev(value);
            double t = 0;
            std::string name;
            if (!(ev >> t >> name))
                fail("publish event needs \"<time_s> <name>\"");
            sc.publish_events.emplace_back(t, name);
            continue;
        }
        auto it = field_table().find(section + "." + key);
        if (it == field_table().end())
            fail("unknown key \"" + key + "\" in section [" + section + "]");
        try {
            it->second.set(sc, value);
        } catch (const std::exception& e) {
            fail(std::string(e.what()));
        }
    }
    if (!saw_topology)
        throw ScenarioError(source_name + ": missing required section [topology]");
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ScenarioError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

void apply_override(Scenario& sc, const std::string& key, const std::string& value) {
    auto it = field_table().find(key);
    if (it == field_table().end())
        throw ScenarioError("unknown scenario key: " + key);
    try {
        it->second.set(sc, value);
    } catch (const std::exception& e) {
        throw ScenarioError(key + ": " + e.what());
    }
}

void validate(const Scenario& sc) {
    auto fail = [&](const std::string& msg) { throw ScenarioError(sc.source_name + ": " + msg); };
    if (sc.duration_s <= 0)
        fail("run.duration_s must be > 0");
    if (sc.bucket_s <= 0)
        fail("run.bucket_s must be > 0");
    if (sc.kind != "star" && sc.kind != "multi_upstream")
        fail("topology.kind must be star or multi_upstream");
    if (sc.kind == "multi_upstream" && sc.relays.empty())
        fail("multi_upstream topology needs topology.relays");
    if (sc.kind == "multi_upstream" && sc.producer_count != 1)
        fail("multi_upstream topology supports exactly one producer");
    for (const auto& r : sc.relays)
        if (r != "route" && r != "noroute" && r != "blackhole")
            fail("relay mode must be route|noroute|blackhole, got " + r);
    if (sc.consumers < 1)
        fail("topology.consumers must be >= 1");
    if (sc.router_count < 1)
        fail("topology.router_count must be >= 1");
    if (sc.producer_count < 1)
        fail("topology.producer_count must be >= 1");
    if (sc.strategy != "PARALLEL" && sc.strategy != "SEQUENTIAL")
        fail("strategy.mode must be PARALLEL or SEQUENTIAL");
    if (sc.mcp < 0 || sc.mcp > 1)
        fail("consumers.mcp must be within [0,1]");
    if (sc.benign_kind != "BASIC" && sc.benign_kind != "ZIPF")
        fail("consumers.benign_kind must be BASIC or ZIPF");
    if (sc.benign_rate <= 0 || sc.malicious_rate <= 0)
        fail("consumer rates must be > 0");
    if (sc.zipf_alpha <= 0)
        fail("consumers.zipf_alpha must be > 0");
    if (sc.lifetime_s <= 0)
        fail("consumers.lifetime_s must be > 0");
    if (sc.catalog != "auto" && sc.catalog != "ranks" && sc.catalog != "sequences" &&
        sc.catalog != "list")
        fail("producer.catalog must be auto|ranks|sequences|list");
    if (sc.plausibility != "accept" && sc.plausibility != "depth_alphabet")
        fail("producer.plausibility must be accept or depth_alphabet");
    if (sc.bloom != "off" && sc.bloom != "on" && sc.bloom != "auto")
        fail("producer.bloom must be off|on|auto");
    if (sc.cnack_interval_s <= 0)
        fail("producer.cnack_interval_s must be > 0");
    if (sc.cnack_horizon_s < sc.cnack_interval_s)
        fail("producer.cnack_horizon_s must be >= cnack_interval_s");
    if (sc.cnack_window_s <= 0 || sc.fnack_window_s <= 0)
        fail("crypto windows must be > 0");
    if (sc.growth_add != "none" && sc.growth_add != "benign" && sc.growth_add != "malicious")
        fail("growth.add must be none|benign|malicious");
    if (sc.growth_add != "none" && sc.growth_per_second <= 0)
        fail("growth.per_second must be > 0");
    try {
        parse_name(sc.prefix);
        if (!sc.attack_prefix.empty())
            parse_name(sc.attack_prefix);
        for (const auto& [t, name] : sc.publish_events)
            parse_name(name);
    } catch (const ParseError& e) {
        fail(e.what());
    }
    bool bloom_enabled = sc.bloom != "off" || sc.bloom_preload;
    std::string effective_catalog = sc.catalog;
    if (effective_catalog == "auto")
        effective_catalog = sc.benign_kind == "BASIC" ? "sequences" : "ranks";
    if (bloom_enabled && effective_catalog == "sequences")
        fail("bloom publication requires an enumerable catalog (ranks or list)");
    if (!sc.sweep_axis.empty() && field_table().find(sc.sweep_axis) == field_table().end())
        fail("sweep.axis names unknown key " + sc.sweep_axis);
}

std::string to_text(const Scenario& sc) {
    std::ostringstream out;
    std::string section;
    for (const auto& [key, field] : field_table()) {
        if (key.rfind("sweep.", 0) == 0)
            continue;
        std::string sec = key.substr(0, key.find('.'));
        if (sec != section) {
            if (!section.empty())
                out << '\n';
            out << '[' << sec << "]\n";
            section = sec;
        }
        out << key.substr(key.find('.') + 1) << " = " << field.get(sc) << '\n';
    }
    if (!sc.publish_events.empty()) {
        out << "\n[publish]\n";
        for (const auto& [t, name] : sc.publish_events)
            out << "event = " << fmt_double(t) << ' ' << name << '\n';
    }
    return out.str();
}

} // namespace nacksim
