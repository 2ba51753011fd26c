#pragma once

// Seeded estimation of Pr[property] over sampled colorings. Per-trial seeds
// are index-derived, never drawn from a shared stream, so trials can run in
// any order or in parallel with bit-identical results.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chromathresh/detect.hpp"
#include "chromathresh/graph.hpp"
#include "chromathresh/moments.hpp"
#include "chromathresh/query.hpp"

namespace chromathresh {

struct TrialPlan {
    Vertex n = 0;
    Color r = 0;
    PropertyQuery query;
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
    double z = 1.959964; // 95% two-sided
};

struct Estimate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct RunOptions {
    unsigned threads = 1;
    DetectOptions detect;
};

// Wilson score interval, clamped to [0,1]. Well-behaved near 0 and 1,
// which is where threshold sweeps live.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double z);

Estimate run_trials(const TrialPlan& plan, const RunOptions& opts = {});

// Same, but also the per-trial success sequence (determinism checks).
struct TrialRun {
    Estimate estimate;
    std::vector<std::uint8_t> outcomes;
};
TrialRun run_trials_detailed(const TrialPlan& plan, const RunOptions& opts = {});

struct GridPoint {
    Vertex n = 0;
    std::uint32_t k = 0;
    Color r = 0;
};

struct SweepRecord {
    Vertex n = 0;
    std::uint32_t k = 0;
    Color r = 0;
    std::string property;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t master_seed = 0; // per-point seed derived from (base seed, index)
    Regime regime = Regime::Unknown;
    std::uint64_t elapsed_ms = 0;  // wall clock; excluded from determinism
    std::optional<std::string> error;
};

// One record per grid point, in grid order. Per-point failures are recorded
// in the record's error field; the sweep itself never aborts.
std::vector<SweepRecord> sweep(const TrialPlan& base, const std::vector<GridPoint>& grid,
                               const RunOptions& opts = {},
                               const RegimeConstants& consts = {});

// CSV schema (fixed): n,k,r,property,trials,successes,p_hat,ci_low,ci_high,
// seed,regime,elapsed_ms. Error records emit a "# point ... error=..." line.
std::string sweep_csv_header();
std::string sweep_record_to_csv(const SweepRecord& rec);
std::string sweep_record_to_json(const SweepRecord& rec);

} // namespace chromathresh
