#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "chromathresh/graph.hpp"

using namespace chromathresh;

TEST_CASE("edge_index matches lexicographic enumeration") {
    CHECK(edge_index(0, 1, 4) == 0);
    CHECK(edge_index(2, 3, 4) == 5); // last edge of K_4 = C(4,2)-1

    // independent oracle: enumerate all pairs of K_5 lexicographically
    EdgeIndex expected = 0;
    for (Vertex u = 0; u < 5; ++u) {
        for (Vertex v = u + 1; v < 5; ++v) {
            CHECK(edge_index(u, v, 5) == expected);
            ++expected;
        }
    }
    CHECK(edge_index(1, 3, 5) == 5);
}

TEST_CASE("edge_index rejects bad pairs") {
    CHECK_THROWS_AS(edge_index(1, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(edge_index(2, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(edge_index(0, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(edge_endpoints(6, 4), std::invalid_argument);
}

TEST_CASE("edge_endpoints inverts edge_index for all n <= 64") {
    CHECK(edge_endpoints(0, 4) == std::pair<Vertex, Vertex>{0, 1});
    CHECK(edge_endpoints(5, 4) == std::pair<Vertex, Vertex>{2, 3});
    for (Vertex n = 2; n <= 64; ++n) {
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                const EdgeIndex e = edge_index(u, v, n);
                CHECK(e < edge_count(n));
                const auto [uu, vv] = edge_endpoints(e, n);
                REQUIRE(uu == u);
                REQUIRE(vv == v);
            }
        }
    }
}

TEST_CASE("sampler is deterministic and respects r") {
    const SeedSpec seed{42, 0};
    const ColoredGraph a = sample_coloring(6, 3, seed);
    const ColoredGraph b = sample_coloring(6, 3, seed);
    CHECK(a.colors == b.colors);
    CHECK(a.valid());

    const ColoredGraph c = sample_coloring(6, 3, SeedSpec{42, 1});
    CHECK(a.colors != c.colors); // different trial, different stream

    const ColoredGraph one = sample_coloring(6, 1, SeedSpec{7, 3});
    for (Color col : one.colors) CHECK(col == 0);

    CHECK_THROWS_AS(sample_coloring(0, 2, seed), std::invalid_argument);
    CHECK_THROWS_AS(sample_coloring(4, 0, seed), std::invalid_argument);
}

TEST_CASE("per-edge color frequencies follow the uniform law") {
    // n=20, r=5, 1e5 samples; every (edge, color) cell within 4 sigma of N/5
    const Vertex n = 20;
    const Color r = 5;
    const int samples = 100000;
    const EdgeIndex m = edge_count(n);
    std::vector<std::array<std::uint32_t, 5>> counts(m, {0, 0, 0, 0, 0});
    for (int s = 0; s < samples; ++s) {
        const ColoredGraph g = sample_coloring(n, r, SeedSpec{987654321, static_cast<std::uint64_t>(s)});
        for (EdgeIndex e = 0; e < m; ++e) ++counts[e][g.colors[e]];
    }
    const double mean = samples / 5.0;
    const double sigma = std::sqrt(samples * (1.0 / 5) * (4.0 / 5));
    for (EdgeIndex e = 0; e < m; ++e) {
        for (Color c = 0; c < r; ++c) {
            CHECK(std::abs(counts[e][c] - mean) <= 4.0 * sigma);
        }
    }
}

TEST_CASE("color classes partition the edges") {
    const ColoredGraph g = sample_coloring(10, 3, SeedSpec{5, 0});
    std::set<EdgeIndex> all;
    std::size_t total = 0;
    for (Color c = 0; c < 3; ++c) {
        const auto cls = color_class(g, c);
        for (EdgeIndex e : cls) {
            CHECK(g.colors[e] == c);
            CHECK(all.insert(e).second); // pairwise disjoint
        }
        total += cls.size();
    }
    CHECK(total == 45);
    CHECK_THROWS_AS(color_class(g, 3), std::invalid_argument);

    const ColoredGraph mono = sample_coloring(7, 1, SeedSpec{5, 0});
    CHECK(color_class(mono, 0).size() == edge_count(7));
}

TEST_CASE("text serialization round-trips and is canonical") {
    const ColoredGraph g = sample_coloring(5, 3, SeedSpec{11, 2});
    const std::string text = to_text(g);
    const ColoredGraph back = from_text(text);
    CHECK(back.n == g.n);
    CHECK(back.r == g.r);
    CHECK(back.colors == g.colors);
    CHECK(to_text(back) == text); // bit-identical serialization

    CHECK_THROWS_AS(from_text("4"), std::invalid_argument);
    CHECK_THROWS_AS(from_text("4 2\n0 0 0"), std::invalid_argument);     // too few
    CHECK_THROWS_AS(from_text("4 2\n0 0 0 0 0 0 0"), std::invalid_argument); // too many
    CHECK_THROWS_AS(from_text("4 2\n0 0 0 0 0 2"), std::invalid_argument);   // color >= r
}

TEST_CASE("trial seed derivation is a pure function of master and index") {
    const SeedSpec a{123, 7};
    const SeedSpec b{123, 7};
    CHECK(a.derived_seed() == b.derived_seed());
    CHECK(SeedSpec{123, 8}.derived_seed() != a.derived_seed());
    CHECK(SeedSpec{124, 7}.derived_seed() != a.derived_seed());
}
