#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chromathresh/montecarlo.hpp"
#include "chromathresh/oracle.hpp"

using namespace chromathresh;

TEST_CASE("wilson interval reference values") {
    const auto degenerate = wilson_interval(17, 17, 0.0);
    CHECK(degenerate.first == doctest::Approx(1.0));
    CHECK(degenerate.second == doctest::Approx(1.0));

    const auto mid = wilson_interval(50, 100, 1.96);
    CHECK(std::abs(mid.first - 0.4038) < 1e-3);
    CHECK(std::abs(mid.second - 0.5962) < 1e-3);

    const auto low = wilson_interval(0, 100, 1.96);
    CHECK(low.first == 0.0);
    CHECK(std::abs(low.second - 0.0370) < 1e-3);

    CHECK_THROWS_AS(wilson_interval(1, 0, 1.96), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(5, 4, 1.96), std::invalid_argument);

    // interval always brackets p_hat and sits inside [0,1]
    for (std::uint64_t t : {1ull, 7ull, 100ull}) {
        for (std::uint64_t s = 0; s <= t; ++s) {
            const auto [lo, hi] = wilson_interval(s, t, 2.5);
            const double p = static_cast<double>(s) / t;
            CHECK(lo >= 0.0);
            CHECK(hi <= 1.0);
            CHECK(lo <= p + 1e-15);
            CHECK(p <= hi + 1e-15);
        }
    }
}

TEST_CASE("run_trials: certain properties and determinism") {
    TrialPlan plan;
    plan.n = 6;
    plan.r = 1;
    plan.query = {SubgraphKind::Matching, Chromatic::Mono, 3};
    plan.trials = 100;
    plan.master_seed = 99;
    const Estimate e = run_trials(plan);
    CHECK(e.successes == 100);
    CHECK(e.p_hat == 1.0);

    const TrialRun a = run_trials_detailed(plan);
    const TrialRun b = run_trials_detailed(plan);
    CHECK(a.outcomes == b.outcomes); // identical success sequences
}

TEST_CASE("run_trials estimate matches the exact probability") {
    // Pr[mono 2-matching in K_4^2] = 7/8 exactly
    TrialPlan plan;
    plan.n = 4;
    plan.r = 2;
    plan.query = {SubgraphKind::Matching, Chromatic::Mono, 2};
    plan.trials = 20000;
    plan.master_seed = 31337;
    plan.z = 3.290527; // 99.9% two-sided
    const Estimate e = run_trials(plan);
    CHECK(e.ci_low <= 0.875);
    CHECK(0.875 <= e.ci_high);
}

TEST_CASE("parallel and serial execution agree bit for bit") {
    TrialPlan plan;
    plan.n = 10;
    plan.r = 3;
    plan.query = {SubgraphKind::Matching, Chromatic::Hetero, 3};
    plan.trials = 4000;
    plan.master_seed = 777;

    const TrialRun serial = run_trials_detailed(plan, {.threads = 1});
    const TrialRun parallel = run_trials_detailed(plan, {.threads = 4});
    CHECK(serial.outcomes == parallel.outcomes);
    CHECK(serial.estimate.successes == parallel.estimate.successes);
    CHECK(serial.estimate.ci_low == parallel.estimate.ci_low);
    CHECK(serial.estimate.ci_high == parallel.estimate.ci_high);
}

TEST_CASE("95% Wilson intervals cover the exact value in repeated experiments") {
    // exact value from the oracle: 7/8 at (n=4, r=2, mono 2-matching)
    const double truth = 0.875;
    int covered = 0;
    const int experiments = 200;
    for (int i = 0; i < experiments; ++i) {
        TrialPlan plan;
        plan.n = 4;
        plan.r = 2;
        plan.query = {SubgraphKind::Matching, Chromatic::Mono, 2};
        plan.trials = 1000;
        plan.master_seed = 5000 + static_cast<std::uint64_t>(i);
        const Estimate e = run_trials(plan);
        if (e.ci_low <= truth && truth <= e.ci_high) ++covered;
    }
    CHECK(covered >= 180); // >= 90% of 200
}

TEST_CASE("p_hat is non-increasing in r for mono properties, up to noise") {
    // paired seeds across the r grid; 3 sigma slack on each step
    const std::uint64_t trials = 3000;
    double prev = 2.0;
    for (Color r : {2ull, 4ull, 8ull, 16ull, 32ull}) {
        TrialPlan plan;
        plan.n = 8;
        plan.r = r;
        plan.query = {SubgraphKind::Matching, Chromatic::Mono, 2};
        plan.trials = trials;
        plan.master_seed = 424242; // shared seed: paired samples
        const Estimate e = run_trials(plan);
        const double sigma = std::sqrt(0.25 / trials);
        CHECK(e.p_hat <= prev + 3 * sigma);
        prev = e.p_hat;
    }
}

TEST_CASE("degenerate sweep equals run_trials at the derived seed") {
    TrialPlan base;
    base.query = {SubgraphKind::Matching, Chromatic::Mono, 2};
    base.trials = 500;
    base.master_seed = 2718;

    const auto records = sweep(base, {GridPoint{8, 2, 3}});
    REQUIRE(records.size() == 1);
    REQUIRE_FALSE(records[0].error.has_value());

    TrialPlan single = base;
    single.n = 8;
    single.r = 3;
    single.master_seed = SeedSpec{base.master_seed, 0}.derived_seed();
    const Estimate direct = run_trials(single);
    CHECK(records[0].successes == direct.successes);
    CHECK(records[0].p_hat == direct.p_hat);
    CHECK(records[0].master_seed == single.master_seed);
}

TEST_CASE("sweep records errors per point instead of aborting") {
    TrialPlan base;
    base.query = {SubgraphKind::Matching, Chromatic::Mono, 2};
    base.trials = 10;
    base.master_seed = 5;
    // second point is invalid: 2k > n
    const auto records = sweep(base, {GridPoint{8, 2, 2}, GridPoint{3, 2, 2}});
    REQUIRE(records.size() == 2);
    CHECK_FALSE(records[0].error.has_value());
    CHECK(records[1].error.has_value());
    CHECK(sweep_record_to_csv(records[1]).rfind("# point", 0) == 0);
}

TEST_CASE("sweep CSV schema") {
    CHECK(sweep_csv_header() ==
          "n,k,r,property,trials,successes,p_hat,ci_low,ci_high,seed,regime,elapsed_ms");
    TrialPlan base;
    base.query = {SubgraphKind::Matching, Chromatic::Mono, 2};
    base.trials = 100;
    base.master_seed = 12;
    auto records = sweep(base, {GridPoint{6, 2, 2}});
    REQUIRE(records.size() == 1);
    records[0].elapsed_ms = 0; // wall clock is not part of the contract
    const std::string row = sweep_record_to_csv(records[0]);
    // 12 comma-separated fields, fixed 6-decimal probabilities
    CHECK(std::count(row.begin(), row.end(), ',') == 11);
    CHECK(row.find("mono-matching") != std::string::npos);
    const std::string json = sweep_record_to_json(records[0]);
    CHECK(json.find("\"property\":\"mono-matching\"") != std::string::npos);
}
