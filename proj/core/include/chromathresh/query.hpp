#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "chromathresh/graph.hpp"

namespace chromathresh {

enum class SubgraphKind { Matching, Clique, Tree };
enum class Chromatic { Mono, Hetero };

// Which subgraph property is being asked of a coloring. k counts edges for
// matchings and vertices for cliques and trees.
struct PropertyQuery {
    SubgraphKind kind = SubgraphKind::Matching;
    Chromatic chromatic = Chromatic::Mono;
    std::uint32_t k = 1;

    bool operator==(const PropertyQuery&) const = default;
};

// Throws std::invalid_argument unless 1 <= k and (matching: 2k <= n,
// clique/tree: k <= n).
void validate_query(const PropertyQuery& q, Vertex n);

// Labels used by the CLI and the sweep CSV schema:
// mono-matching | hetero-matching | mono-clique | hetero-clique |
// mono-tree | hetero-tree.
std::string property_label(const PropertyQuery& q);
std::optional<PropertyQuery> parse_property_label(const std::string& label, std::uint32_t k);

std::string kind_name(SubgraphKind kind);
std::string chromatic_name(Chromatic c);

} // namespace chromathresh
