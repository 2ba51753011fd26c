#include "chromathresh/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "chromathresh/errors.hpp"

namespace chromathresh {

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (successes > trials)
        throw std::invalid_argument("wilson_interval: successes exceed trials");
    if (z < 0) throw std::invalid_argument("wilson_interval: z must be >= 0");
    const double t = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / t;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / t;
    const double center = (p + z2 / (2.0 * t)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

void validate_plan(const TrialPlan& plan) {
    if (plan.trials < 1) throw std::invalid_argument("trial plan: trials must be >= 1");
    if (plan.r == 0) throw std::invalid_argument("trial plan: r must be >= 1");
    validate_query(plan.query, plan.n);
}

constexpr std::uint8_t kFail = 0, kSuccess = 1, kError = 2;

} // namespace

TrialRun run_trials_detailed(const TrialPlan& plan, const RunOptions& opts) {
    validate_plan(plan);
    std::vector<std::uint8_t> outcomes(plan.trials, kFail);

    auto run_one = [&](std::uint64_t i) {
        const ColoredGraph g = sample_coloring(plan.n, plan.r, SeedSpec{plan.master_seed, i});
        try {
            outcomes[i] = detect(g, plan.query, opts.detect).exists ? kSuccess : kFail;
        } catch (const ResourceError&) {
            outcomes[i] = kError;
        }
    };

    const unsigned threads = std::max(1u, opts.threads);
    if (threads == 1 || plan.trials == 1) {
        for (std::uint64_t i = 0; i < plan.trials; ++i) run_one(i);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::uint64_t i = next.fetch_add(1);
                    if (i >= plan.trials) return;
                    run_one(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    for (std::uint64_t i = 0; i < plan.trials; ++i)
        if (outcomes[i] == kError)
            throw ResourceError("run_trials: detector budget exhausted at trial " +
                                std::to_string(i));

    TrialRun run;
    run.outcomes = std::move(outcomes);
    run.estimate.trials = plan.trials;
    run.estimate.successes = 0;
    for (auto o : run.outcomes) run.estimate.successes += o;
    run.estimate.p_hat =
        static_cast<double>(run.estimate.successes) / static_cast<double>(plan.trials);
    std::tie(run.estimate.ci_low, run.estimate.ci_high) =
        wilson_interval(run.estimate.successes, plan.trials, plan.z);
    return run;
}

Estimate run_trials(const TrialPlan& plan, const RunOptions& opts) {
    return run_trials_detailed(plan, opts).estimate;
}

std::vector<SweepRecord> sweep(const TrialPlan& base, const std::vector<GridPoint>& grid,
                               const RunOptions& opts, const RegimeConstants& consts) {
    std::vector<SweepRecord> records;
    records.reserve(grid.size());
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const GridPoint& pt = grid[idx];
        SweepRecord rec;
        rec.n = pt.n;
        rec.k = pt.k;
        rec.r = pt.r;
        PropertyQuery q = base.query;
        q.k = pt.k;
        rec.property = property_label(q);
        rec.trials = base.trials;
        rec.master_seed = SeedSpec{base.master_seed, idx}.derived_seed();

        const auto start = std::chrono::steady_clock::now();
        try {
            rec.regime = classify_regime(q, pt.n, pt.r, consts);
            TrialPlan plan = base;
            plan.n = pt.n;
            plan.r = pt.r;
            plan.query = q;
            plan.master_seed = rec.master_seed;
            const Estimate est = run_trials(plan, opts);
            rec.successes = est.successes;
            rec.p_hat = est.p_hat;
            rec.ci_low = est.ci_low;
            rec.ci_high = est.ci_high;
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
        rec.elapsed_ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count());
        records.push_back(std::move(rec));
    }
    return records;
}

std::string sweep_csv_header() {
    return "n,k,r,property,trials,successes,p_hat,ci_low,ci_high,seed,regime,elapsed_ms";
}

std::string sweep_record_to_csv(const SweepRecord& rec) {
    if (rec.error) {
        return "# point n=" + std::to_string(rec.n) + " k=" + std::to_string(rec.k) +
               " r=" + std::to_string(rec.r) + " error=" + *rec.error;
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%u,%u,%llu,%s,%llu,%llu,%.6f,%.6f,%.6f,%llu,%s,%llu",
                  rec.n, rec.k, static_cast<unsigned long long>(rec.r), rec.property.c_str(),
                  static_cast<unsigned long long>(rec.trials),
                  static_cast<unsigned long long>(rec.successes), rec.p_hat, rec.ci_low,
                  rec.ci_high, static_cast<unsigned long long>(rec.master_seed),
                  regime_name(rec.regime).c_str(),
                  static_cast<unsigned long long>(rec.elapsed_ms));
    return buf;
}

std::string sweep_record_to_json(const SweepRecord& rec) {
    nlohmann::json j;
    j["n"] = rec.n;
    j["k"] = rec.k;
    j["r"] = rec.r;
    j["property"] = rec.property;
    j["trials"] = rec.trials;
    j["successes"] = rec.successes;
    j["p_hat"] = rec.p_hat;
    j["ci_low"] = rec.ci_low;
    j["ci_high"] = rec.ci_high;
    j["seed"] = rec.master_seed;
    j["regime"] = regime_name(rec.regime);
    j["elapsed_ms"] = rec.elapsed_ms;
    if (rec.error) j["error"] = *rec.error;
    return j.dump();
}

} // namespace chromathresh
