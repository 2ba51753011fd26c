#pragma once

// Existence decisions for all six properties on a single coloring, with
// witnesses, for n far beyond what the enumeration oracle can reach.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chromathresh/graph.hpp"
#include "chromathresh/query.hpp"

namespace chromathresh {

// Certificate for a positive answer. The edge set itself satisfies the
// claimed property; tests validate witnesses with an independent checker.
struct Witness {
    std::vector<EdgeIndex> edges;
    std::vector<Vertex> vertices;
};

struct DetectResult {
    bool exists = false;
    std::optional<Witness> witness;
};

struct DetectOptions {
    // Node-expansion budget shared by the backtracking searches. Exhausting
    // it throws ResourceError; it is never silently reported as "false".
    std::uint64_t budget = 100'000'000;
};

DetectResult detect(const ColoredGraph& g, const PropertyQuery& q, const DetectOptions& opts = {});

// Largest connected component over all color classes: (color, vertex count),
// lowest color on ties. Mono k-tree existence is exactly component >= k.
struct ColorComponent {
    Color color = 0;
    Vertex size = 0;
};
ColorComponent max_color_component(const ColoredGraph& g);

// Exact decision via matroid intersection (graphic matroid of K_n against
// the one-edge-per-color partition matroid): a common independent set of
// size n-1 is a spanning tree with pairwise distinct colors.
DetectResult rainbow_spanning_tree(const ColoredGraph& g);

// Witness JSON: {kind, chromatic, k, edges:[[u,v,color],...]}.
std::string witness_to_json(const ColoredGraph& g, const PropertyQuery& q, const Witness& w);

} // namespace chromathresh
