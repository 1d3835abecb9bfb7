#include "nacksim/runner.hpp"

#include <sstream>

namespace nacksim {

LiveRun start_run(const Scenario& sc) {
    validate(sc);
    LiveRun run;
    run.scenario = std::make_unique<Scenario>(sc);
    run.engine = std::make_unique<Engine>(sc.seed, from_sec(sc.bucket_s));
    run.topology = std::make_unique<Topology>(build_topology(*run.engine, *run.scenario));
    schedule_population_growth(*run.engine, *run.topology, *run.scenario);
    return run;
}

void LiveRun::finish() {
    engine->flush_link_counters();
    Metrics& m = engine->metrics();
    for (const Consumer* c : topology->consumers) {
        const auto& t = c->totals();
        m.set_summary(c->label(), "interests_sent", t.sent);
        m.set_summary(c->label(), "data_received", t.data_received);
        m.set_summary(c->label(), "not_found", t.not_found);
        m.set_summary(c->label(), "unreachable", t.unreachable);
        m.set_summary(c->label(), "abandoned", t.abandoned);
        m.set_summary(c->label(), "retransmissions", t.retransmissions);
        m.set_summary(c->label(), "rtt_sum_us", t.rtt_sum_us);
    }
    for (const Producer* p : topology->producers) {
        m.set_summary(p->label(), "requirement_violations", p->requirement_violations());
        m.set_summary(p->label(), "data_delay_p95_us", p->data_delay_p95_us());
    }
    m.set_summary("run", "consumer_nodes", static_cast<std::int64_t>(topology->consumers.size()));
    m.set_summary("run", "benign_consumers", static_cast<std::int64_t>(topology->benign_count));
    m.set_summary("run", "malicious_consumers",
                  static_cast<std::int64_t>(topology->malicious_count));
}

RunResult run_scenario(const Scenario& sc) {
    LiveRun run = start_run(sc);
    run.engine->run_until(from_sec(sc.duration_s));
    run.finish();
    RunResult out;
    out.series_csv = run.engine->metrics().series_csv();
    out.summary_csv = run.engine->metrics().summary_csv();
    out.manifest = to_text(*run.scenario);
    return out;
}

SweepResult run_sweep(const Scenario& base, const std::string& axis,
                      const std::vector<std::string>& values) {
    if (values.empty())
        throw ScenarioError("sweep needs at least one value for axis " + axis);
    SweepResult result;
    std::ostringstream merged;
    merged << "axis,axis_value,time,node,metric,value\n";
    for (const auto& value : values) {
        Scenario sc = base;
        sc.sweep_axis.clear();
        sc.sweep_values.clear();
        apply_override(sc, axis, value);
        RunResult rr = run_scenario(sc);
        // prefix every series row with the axis coordinates
        std::istringstream in(rr.series_csv);
        std::string line;
        std::getline(in, line);  // drop per-run header
        while (std::getline(in, line))
            merged << axis << ',' << value << ',' << line << '\n';
        result.runs.emplace_back(value, std::move(rr));
    }
    result.merged_csv = merged.str();
    return result;
}

} // namespace nacksim
