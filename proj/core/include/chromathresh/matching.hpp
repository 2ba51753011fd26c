#pragma once

// Exact maximum matching in general graphs (Edmonds' blossom algorithm).
// The threshold experiments need exact existence answers; a heuristic
// matcher would bias the estimated probabilities.

#include <cstdint>
#include <vector>

#include "chromathresh/graph.hpp"

namespace chromathresh {

using VertexPair = std::pair<Vertex, Vertex>;

// mate[v] = matched partner of v, or kNoMate. Exact maximum cardinality.
inline constexpr Vertex kNoMate = static_cast<Vertex>(-1);
std::vector<Vertex> maximum_matching(const std::vector<VertexPair>& edges, Vertex n);

// Size of a maximum matching.
std::size_t max_matching(const std::vector<VertexPair>& edges, Vertex n);

// Maximal matching by scanning edges in the given order; lower bound used
// both as a fast path and as the sandwich check in tests.
std::size_t greedy_matching(const std::vector<VertexPair>& edges, Vertex n);

} // namespace chromathresh
