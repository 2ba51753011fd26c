#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <vector>

#include "chromathresh/matching.hpp"
#include "chromathresh/rng.hpp"

using namespace chromathresh;

namespace {

// Independent oracle: maximum matching via DP over vertex subsets.
// dp[mask] = max matching using only vertices in mask.
std::size_t dp_max_matching(const std::vector<VertexPair>& edges, Vertex n) {
    std::vector<int> dp(1u << n, 0);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        int best = 0;
        // drop the lowest vertex in the mask, matched or unmatched
        const Vertex low = static_cast<Vertex>(std::countr_zero(mask));
        best = dp[mask & (mask - 1)];
        for (auto [u, v] : edges) {
            if (u != low && v != low) continue;
            const Vertex other = (u == low) ? v : u;
            if (!(mask >> other & 1)) continue;
            const std::uint32_t rest = mask & ~(1u << low) & ~(1u << other);
            best = std::max(best, 1 + dp[rest]);
        }
        dp[mask] = best;
    }
    return static_cast<std::size_t>(dp[(1u << n) - 1]);
}

std::vector<VertexPair> petersen_edges() {
    // outer 5-cycle, inner pentagram, spokes
    std::vector<VertexPair> e;
    for (Vertex i = 0; i < 5; ++i) {
        e.push_back({i, (i + 1) % 5});
        e.push_back({static_cast<Vertex>(5 + i), static_cast<Vertex>(5 + (i + 2) % 5)});
        e.push_back({i, static_cast<Vertex>(5 + i)});
    }
    for (auto& [u, v] : e)
        if (u > v) std::swap(u, v);
    return e;
}

} // namespace

TEST_CASE("max_matching on tiny fixed graphs") {
    CHECK(max_matching({{0, 1}, {1, 2}, {2, 3}}, 4) == 2); // path on 4 vertices
    CHECK(max_matching({{0, 1}, {0, 2}, {1, 2}}, 3) == 1); // triangle
    CHECK(max_matching({}, 5) == 0);
    // 5-cycle needs a blossom to see it is only 2
    CHECK(max_matching({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}, 5) == 2);
}

TEST_CASE("Petersen graph has a perfect matching") {
    const auto edges = petersen_edges();
    CHECK(max_matching(edges, 10) == 5);
    CHECK(dp_max_matching(edges, 10) == 5);
}

TEST_CASE("blossom agrees with subset DP on random graphs") {
    SplitMix64 rng(20240601);
    for (int trial = 0; trial < 300; ++trial) {
        const Vertex n = 3 + static_cast<Vertex>(rng.next_below(10)); // up to 12
        std::vector<VertexPair> edges;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (rng.next_below(100) < 40) edges.push_back({u, v});
        const std::size_t exact = max_matching(edges, n);
        REQUIRE(exact == dp_max_matching(edges, n));

        // mate array is an involution without fixed points
        const auto mate = maximum_matching(edges, n);
        for (Vertex v = 0; v < n; ++v)
            if (mate[v] != kNoMate) {
                CHECK(mate[mate[v]] == v);
                CHECK(mate[v] != v);
            }

        // greedy <= exact <= floor(n/2)
        CHECK(greedy_matching(edges, n) <= exact);
        CHECK(exact <= n / 2);
    }
}
