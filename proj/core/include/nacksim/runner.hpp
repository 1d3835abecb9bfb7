#pragma once

#include <memory>

#include "nacksim/scenario.hpp"
#include "nacksim/topology.hpp"

namespace nacksim {

struct RunResult {
    std::string series_csv;
    std::string summary_csv;
    std::string manifest;
};

// One full deterministic run. Identical (scenario, seed) replays yield
// byte-identical CSVs.
RunResult run_scenario(const Scenario& sc);

struct SweepResult {
    std::vector<std::pair<std::string, RunResult>> runs;  // axis value -> result
    std::string merged_csv;  // axis,axis_value,time,node,metric,value
};

// One run per sweep value, all sharing the base seed (per-node RNG substreams
// keep unrelated nodes' draws aligned across runs).
SweepResult run_sweep(const Scenario& base, const std::string& axis,
                      const std::vector<std::string>& values);

// Keeps the engine and topology alive for inspection; used by tests and the
// acceptance suite.
struct LiveRun {
    std::unique_ptr<Engine> engine;
    std::unique_ptr<Scenario> scenario;
    std::unique_ptr<Topology> topology;

    void finish();  // summary bookkeeping normally done by run_scenario
};

LiveRun start_run(const Scenario& sc);

} // namespace nacksim
