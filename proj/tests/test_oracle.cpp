#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "chromathresh/errors.hpp"
#include "chromathresh/oracle.hpp"

using namespace chromathresh;

namespace {

// Test-local brute force: all sets of k disjoint edges of K_n, by direct
// subset filtering. Independent of the library's enumeration order.
std::vector<std::vector<EdgeIndex>> brute_matchings(Vertex n, std::uint32_t k) {
    const EdgeIndex m = edge_count(n);
    std::vector<std::vector<EdgeIndex>> result;
    std::vector<EdgeIndex> subset(k);
    auto rec = [&](auto&& self, EdgeIndex start, std::uint32_t depth) -> void {
        if (depth == k) {
            std::set<Vertex> verts;
            for (EdgeIndex e : subset) {
                const auto [u, v] = edge_endpoints(e, n);
                verts.insert(u);
                verts.insert(v);
            }
            if (verts.size() == 2ull * k) result.push_back(subset);
            return;
        }
        for (EdgeIndex e = start; e < m; ++e) {
            subset[depth] = e;
            self(self, e + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return result;
}

ColoredGraph make_graph(Vertex n, Color r, std::vector<Color> colors) {
    ColoredGraph g;
    g.n = n;
    g.r = r;
    g.colors = std::move(colors);
    REQUIRE(g.valid());
    return g;
}

} // namespace

TEST_CASE("count_k_matchings agrees with direct enumeration") {
    CHECK(count_k_matchings(4, 2) == 3);
    CHECK(count_k_matchings(5, 2) == 15);
    CHECK(count_k_matchings(5, 2) == BigInt(brute_matchings(5, 2).size()));
    for (Vertex n = 2; n <= 8; ++n) {
        CHECK(count_k_matchings(n, 1) == edge_count(n));
        for (std::uint32_t k = 1; 2 * k <= n; ++k)
            CHECK(count_k_matchings(n, k) == BigInt(brute_matchings(n, k).size()));
    }
    CHECK_THROWS_AS(count_k_matchings(5, 3), std::invalid_argument);
}

TEST_CASE("count_occurrences on hand-checkable colorings") {
    // K_4 rainbow: all six edges distinct colors
    const auto rainbow = make_graph(4, 6, {0, 1, 2, 3, 4, 5});
    CHECK(count_occurrences(rainbow, {SubgraphKind::Matching, Chromatic::Mono, 2}) == 0);
    CHECK(count_occurrences(rainbow, {SubgraphKind::Matching, Chromatic::Hetero, 2}) == 3);

    // K_4 single color: every 2-matching is monochromatic
    const auto mono = make_graph(4, 1, {0, 0, 0, 0, 0, 0});
    CHECK(count_occurrences(mono, {SubgraphKind::Matching, Chromatic::Mono, 2}) == 3);
    CHECK(count_occurrences(mono, {SubgraphKind::Matching, Chromatic::Hetero, 2}) == 0);

    // K_5 fixed seed: library count vs an independent triangle scan
    const ColoredGraph g = sample_coloring(5, 2, SeedSpec{2024, 0});
    std::uint64_t mono_triangles = 0;
    for (Vertex a = 0; a < 5; ++a)
        for (Vertex b = a + 1; b < 5; ++b)
            for (Vertex c = b + 1; c < 5; ++c) {
                const Color x = g.color_of(a, b), y = g.color_of(a, c), z = g.color_of(b, c);
                if (x == y && y == z) ++mono_triangles;
            }
    CHECK(count_occurrences(g, {SubgraphKind::Clique, Chromatic::Mono, 3}) == mono_triangles);
}

TEST_CASE("count_occurrences enforces the work cap") {
    const ColoredGraph g = sample_coloring(12, 2, SeedSpec{1, 0});
    CHECK_THROWS_AS(count_occurrences(g, {SubgraphKind::Tree, Chromatic::Mono, 12}, 1000),
                    ResourceError);
    CHECK_THROWS_AS(count_occurrences(g, {SubgraphKind::Matching, Chromatic::Mono, 7}),
                    std::invalid_argument); // 2k > n
}

TEST_CASE("tree placements: count and shape") {
    // trees on k labeled vertices: C(n,k) * k^(k-2)
    CHECK(candidate_count(5, {SubgraphKind::Tree, Chromatic::Mono, 3}) == 10 * 3);
    CHECK(candidate_count(6, {SubgraphKind::Tree, Chromatic::Mono, 4}) == 15 * 16);
    std::uint64_t seen = 0;
    for_each_placement(5, {SubgraphKind::Tree, Chromatic::Mono, 3},
                       [&](const std::vector<EdgeIndex>& pl) {
                           CHECK(pl.size() == 2);
                           ++seen;
                       });
    CHECK(seen == 30);

    // a single-color graph has every tree monochromatic
    const auto mono = make_graph(5, 1, std::vector<Color>(10, 0));
    CHECK(count_occurrences(mono, {SubgraphKind::Tree, Chromatic::Mono, 3}) == 30);
    CHECK(count_occurrences(mono, {SubgraphKind::Tree, Chromatic::Mono, 1}) == 5);
}

TEST_CASE("exact_stats reproduces the n=4 enumeration") {
    const ExactStats mono = exact_stats(4, 2, {SubgraphKind::Matching, Chromatic::Mono, 2});
    CHECK(mono.total_colorings == 64);
    CHECK(mono.colorings_with_property == 56);
    CHECK(mono.probability == BigRat(7, 8));
    CHECK(mono.expected_count == BigRat(3, 2));
    CHECK(mono.delta == 0); // the three perfect matchings of K_4 are edge-disjoint

    const ExactStats het = exact_stats(4, 2, {SubgraphKind::Matching, Chromatic::Hetero, 2});
    CHECK(het.probability == BigRat(7, 8));
    CHECK(het.expected_count == BigRat(3, 2));

    const ExactStats het1 = exact_stats(4, 1, {SubgraphKind::Matching, Chromatic::Hetero, 2});
    CHECK(het1.probability == 0);
    CHECK(het1.expected_count == 0);
}

TEST_CASE("exact_stats respects the coloring cap") {
    OracleCaps caps;
    caps.coloring_cap = 63;
    CHECK_THROWS_AS(exact_stats(4, 2, {SubgraphKind::Matching, Chromatic::Mono, 2}, caps),
                    ResourceError);
}

TEST_CASE("exact_delta examples and symmetry") {
    CHECK(exact_delta(4, 2, 2, Chromatic::Mono) == 0);
    CHECK(exact_delta(5, 2, 2, Chromatic::Mono) == 15); // 60 ordered pairs, each r/r^3 = 1/4
    CHECK(exact_delta(8, 1, 3, Chromatic::Mono) == 0);  // k=1: no dependent pairs

    // hetero at (5,2,2): same 60 ordered pairs, each 2*1/8 = 1/4
    CHECK(exact_delta(5, 2, 2, Chromatic::Hetero) == 15);
    // r < k: no rainbow matchings at all
    CHECK(exact_delta(6, 3, 2, Chromatic::Hetero) == 0);

    // ordered pair counts are even (each unordered pair counted twice)
    const auto by_s = matching_pair_counts(6, 3);
    for (std::uint32_t s = 1; s < 3; ++s) CHECK(by_s[s] % 2 == 0);
}

TEST_CASE("exact_delta equals a coloring-space brute force") {
    // Independent route: sum over ordered pairs of placements of
    // (#colorings of the union making both qualify) / r^|union|,
    // with the union colored exhaustively.
    const Vertex n = 5;
    const std::uint32_t k = 2;
    for (const Color r : {2, 3}) {
        for (const Chromatic chrom : {Chromatic::Mono, Chromatic::Hetero}) {
            const auto placements = brute_matchings(n, k);
            BigRat expected(0);
            for (std::size_t i = 0; i < placements.size(); ++i) {
                for (std::size_t j = 0; j < placements.size(); ++j) {
                    if (i == j) continue;
                    std::vector<EdgeIndex> uni;
                    std::set_union(placements[i].begin(), placements[i].end(),
                                   placements[j].begin(), placements[j].end(),
                                   std::back_inserter(uni));
                    if (uni.size() == placements[i].size() + placements[j].size())
                        continue; // edge-disjoint: independent pair
                    // color the union exhaustively
                    std::vector<Color> assign(uni.size(), 0);
                    std::uint64_t good = 0, total = 0;
                    auto satisfies = [&](const std::vector<EdgeIndex>& pl) {
                        std::vector<Color> cols;
                        for (EdgeIndex e : pl) {
                            const auto pos = std::lower_bound(uni.begin(), uni.end(), e);
                            cols.push_back(assign[pos - uni.begin()]);
                        }
                        if (chrom == Chromatic::Mono)
                            return std::all_of(cols.begin(), cols.end(),
                                               [&](Color c) { return c == cols[0]; });
                        std::sort(cols.begin(), cols.end());
                        return std::adjacent_find(cols.begin(), cols.end()) == cols.end();
                    };
                    for (;;) {
                        ++total;
                        if (satisfies(placements[i]) && satisfies(placements[j])) ++good;
                        std::size_t d = 0;
                        while (d < assign.size() && assign[d] == r - 1) assign[d++] = 0;
                        if (d == assign.size()) break;
                        ++assign[d];
                    }
                    expected += BigRat(BigInt(good), BigInt(total));
                }
            }
            CHECK(exact_delta(n, k, r, chrom) == expected);
        }
    }
}

TEST_CASE("colorings_with_property is non-increasing in k") {
    for (const Color r : {2, 3}) {
        BigInt prev = -1;
        for (std::uint32_t k = 1; k <= 2; ++k) {
            const ExactStats s = exact_stats(5, r, {SubgraphKind::Matching, Chromatic::Mono, k});
            if (prev >= 0) CHECK(s.colorings_with_property <= prev);
            prev = s.colorings_with_property;
        }
    }
}
