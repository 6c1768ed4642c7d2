#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hexctl/config.hpp"
#include "hexctl/csv.hpp"
#include "hexctl/metrics.hpp"

namespace hexctl {

struct RunResult {
    SimLog log;
    std::vector<EvolutionEvent> events;        // empty for the PID baseline
    std::vector<AdaptationSample> telemetry;   // every 100 steps
    std::optional<RuleBase> final_rules;       // final rule-base snapshot (G only)
    Metrics metrics;                           // zeroed when the run aborted
};

// Closed-loop run: reference -> error -> altitude controller -> mixing with
// the attitude-hold commands -> plant step, at fixed dt.  Deterministic for a
// fixed config (the noise stream is seeded).  Numerical failures terminate
// the run with a partial log and the failure recorded.
RunResult run_sim(const RunConfig& cfg);

struct ComparisonRow {
    std::string controller;
    Trajectory trajectory;
    Metrics metrics;
};

// Runs each config (concurrently; they share no state) and collects one
// metrics row per config.  All configs must share the trajectory and plant.
// Throws NumericError if any run aborts.
std::vector<ComparisonRow> compare(const std::vector<RunConfig>& cfgs);

std::string format_comparison_table(const std::vector<ComparisonRow>& rows);
void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows);

}  // namespace hexctl
