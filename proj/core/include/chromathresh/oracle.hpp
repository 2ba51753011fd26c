#pragma once

// Brute-force ground truth. Everything here is exact: big-integer counts,
// big-rational probabilities, no floating point. Caps are explicit because
// the state space is r^C(n,2).

#include <cstdint>
#include <functional>
#include <vector>

#include "chromathresh/bigint.hpp"
#include "chromathresh/graph.hpp"
#include "chromathresh/query.hpp"

namespace chromathresh {

struct OracleCaps {
    BigInt coloring_cap = BigInt(1) << 25; // max r^C(n,2) enumerated by exact_stats
    std::uint64_t work_cap = 10'000'000;   // max candidate subgraphs per enumeration
    std::uint64_t pair_cap = 10'000'000;   // max ordered pairs in a delta sum
};

// Ground truth over the whole coloring space of K_n^r for one query.
struct ExactStats {
    BigInt total_colorings;          // r^C(n,2)
    BigInt colorings_with_property;  // colorings with count > 0
    BigRat probability;              // colorings_with_property / total_colorings
    BigRat expected_count;           // exact E[number of qualifying placements]
    BigRat delta;                    // sum of joint probabilities over dependent ordered pairs
};

// Number of placements a brute-force enumeration for q would visit.
BigInt candidate_count(Vertex n, const PropertyQuery& q);

// Exact number of qualifying k-subgraphs in one coloring.
std::uint64_t count_occurrences(const ColoredGraph& g, const PropertyQuery& q,
                                std::uint64_t work_cap = OracleCaps{}.work_cap);

// q = C(n,2) C(n-2,2) ... C(n-2k+2,2) / k!, the number of k-matchings of K_n.
BigInt count_k_matchings(Vertex n, std::uint32_t k);

// Iterates every coloring of K_n^r in odometer order (edge 0 fastest).
ExactStats exact_stats(Vertex n, Color r, const PropertyQuery& q, const OracleCaps& caps = {});

// Delta for k-matchings: sum over ordered dependent pairs (M_i, M_j) of the
// exact joint probability, classified by the shared-edge count s. Pure
// combinatorics over matchings; no coloring enumeration.
BigRat exact_delta(Vertex n, std::uint32_t k, Color r, Chromatic chromatic,
                   std::uint64_t pair_cap = OracleCaps{}.pair_cap);

// Ordered dependent pair counts by shared-edge count: entry [s] for
// 1 <= s <= k-1 (entry [0] unused). Exposed for bound-consistency checks.
std::vector<std::uint64_t> matching_pair_counts(Vertex n, std::uint32_t k,
                                                std::uint64_t pair_cap = OracleCaps{}.pair_cap);

// Streaming enumeration of placements, each reported as its sorted list of
// edge indices. Used by count_occurrences and exact_stats; exposed so
// callers can build their own evaluations.
void for_each_placement(Vertex n, const PropertyQuery& q,
                        const std::function<void(const std::vector<EdgeIndex>&)>& fn);

} // namespace chromathresh
