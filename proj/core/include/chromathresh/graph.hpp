#pragma once

// The colored complete graph K_n^r: canonical edge indexing, the uniform
// coloring sampler, color classes, and the two serialization formats.

#include <cstdint>
#include <string>
#include <vector>

#include "chromathresh/rng.hpp"

namespace chromathresh {

using Vertex = std::uint32_t;
using EdgeIndex = std::uint64_t;
using Color = std::uint64_t;

// Edges of K_n in lexicographic (u,v) order, u < v.
EdgeIndex edge_index(Vertex u, Vertex v, Vertex n);
std::pair<Vertex, Vertex> edge_endpoints(EdgeIndex e, Vertex n);

inline EdgeIndex edge_count(Vertex n) {
    return static_cast<EdgeIndex>(n) * (n - 1) / 2;
}

// An n-vertex complete graph with an r-coloring of its edges, stored as a
// flat array indexed by edge index. Immutable in spirit: nothing in the
// library mutates a ColoredGraph after construction, so instances can be
// shared freely across threads.
struct ColoredGraph {
    Vertex n = 0;
    Color r = 0;
    std::vector<Color> colors; // colors[e] < r, one entry per edge of K_n

    Color color_of(Vertex u, Vertex v) const { return colors[edge_index(u, v, n)]; }
    bool valid() const;
};

// Uniform coloring: every edge independent, each color probability 1/r,
// edges filled in increasing edge-index order. Deterministic given seed.
ColoredGraph sample_coloring(Vertex n, Color r, const SeedSpec& seed);

// Edges of color class c (the spanning subgraph G_c), in edge-index order.
std::vector<EdgeIndex> color_class(const ColoredGraph& g, Color c);

// Text format: header "n r", then the n(n-1)/2 colors in edge-index order.
std::string to_text(const ColoredGraph& g);
ColoredGraph from_text(const std::string& text);

// Structured-object format with fields {n, r, colors, seed}.
std::string to_json_string(const ColoredGraph& g, const SeedSpec* seed = nullptr);

} // namespace chromathresh
