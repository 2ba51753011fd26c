#include "chromathresh/verify.hpp"

#include <array>
#include <vector>

#include "chromathresh/detect.hpp"
#include "chromathresh/moments.hpp"
#include "chromathresh/oracle.hpp"
#include "chromathresh/query.hpp"

namespace chromathresh {

namespace {

// enumeration volume we are willing to spend per query during verification
constexpr std::uint64_t kVerifyWorkCap = 200'000;

std::vector<std::uint32_t> feasible_ks(Vertex n, SubgraphKind kind, Chromatic chromatic) {
    std::vector<std::uint32_t> ks;
    const std::uint32_t k_max = kind == SubgraphKind::Matching ? n / 2 : n;
    for (std::uint32_t k = 1; k <= k_max; ++k) {
        if (candidate_count(n, {kind, chromatic, k}) <= kVerifyWorkCap) ks.push_back(k);
    }
    return ks;
}

} // namespace

VerifyReport run_verification(const VerifyOptions& opts, std::ostream& log) {
    VerifyReport report;

    // --- detectors against the enumeration oracle ---------------------
    SplitMix64 rng(SeedSpec{opts.master_seed, 0});
    const std::array<Color, 6> r_choices{1, 2, 3, 4, 6, 9};
    const std::array<SubgraphKind, 3> kinds{SubgraphKind::Matching, SubgraphKind::Clique,
                                            SubgraphKind::Tree};
    const std::array<Chromatic, 2> chromatics{Chromatic::Mono, Chromatic::Hetero};

    for (std::uint64_t i = 0; i < opts.graphs; ++i) {
        const Vertex n = 4 + static_cast<Vertex>(rng.next_below(opts.max_n - 3));
        const Color r = r_choices[rng.next_below(r_choices.size())];
        const ColoredGraph g = sample_coloring(n, r, SeedSpec{opts.master_seed, i + 1});
        for (SubgraphKind kind : kinds) {
            for (Chromatic chromatic : chromatics) {
                const auto ks = feasible_ks(n, kind, chromatic);
                if (ks.empty()) continue;
                const std::uint32_t k =
                    ks[rng.next_below(ks.size())];
                const PropertyQuery q{kind, chromatic, k};
                const bool oracle_says = count_occurrences(g, q, kVerifyWorkCap) > 0;
                const DetectResult det = detect(g, q);
                ++report.detect_queries;
                if (det.exists != oracle_says) {
                    ++report.detect_mismatches;
                    log << "MISMATCH detect " << property_label(q) << " k=" << k << " n=" << n
                        << " r=" << r << " graph=" << i << ": detect=" << det.exists
                        << " oracle=" << oracle_says << "\n";
                }
            }
        }
    }
    log << "detect-vs-oracle: " << opts.graphs << " graphs, " << report.detect_queries
        << " queries, " << report.detect_mismatches << " mismatches\n";

    // --- closed forms against exhaustive coloring statistics ----------
    const Vertex formula_max_n = opts.deep ? 6 : 5;
    OracleCaps caps;
    for (Vertex n = 2; n <= formula_max_n; ++n) {
        for (Color r = 1; r <= 3; ++r) {
            if (pow_big(BigInt(r), edge_count(n)) > caps.coloring_cap) continue;
            for (std::uint32_t k = 1; 2ull * k <= n; ++k) {
                for (Chromatic chromatic : chromatics) {
                    const PropertyQuery q{SubgraphKind::Matching, chromatic, k};
                    const ExactStats stats = exact_stats(n, r, q, caps);
                    const ScalarValue expect = chromatic == Chromatic::Mono
                                                   ? expected_mono(n, k, r)
                                                   : expected_hetero(n, k, r);
                    ++report.formula_checks;
                    if (!expect.exact || *expect.exact != stats.expected_count) {
                        ++report.formula_mismatches;
                        log << "MISMATCH expectation " << property_label(q) << " n=" << n
                            << " k=" << k << " r=" << r << "\n";
                    }
                    // second-moment bound must dominate the exact ratio
                    if (k >= 2 && !(chromatic == Chromatic::Hetero && r < k)) {
                        const BigRat delta = exact_delta(n, k, r, chromatic);
                        const ScalarValue bound =
                            chromatic == Chromatic::Mono
                                ? delta_ratio_bound_mono(n, k, r)
                                : delta_ratio_bound_hetero(n, k, r);
                        ++report.formula_checks;
                        const BigRat e2 = *expect.exact * *expect.exact;
                        const bool ok = e2 == 0 ? delta == 0 : delta <= *bound.exact * e2;
                        if (!ok) {
                            ++report.formula_mismatches;
                            log << "MISMATCH delta bound " << property_label(q) << " n=" << n
                                << " k=" << k << " r=" << r << "\n";
                        }
                    }
                }
            }
        }
    }
    log << "formulas-vs-oracle: " << report.formula_checks << " checks, "
        << report.formula_mismatches << " mismatches\n";
    return report;
}

} // namespace chromathresh
