#include "chromathresh/query.hpp"

#include <stdexcept>

namespace chromathresh {

void validate_query(const PropertyQuery& q, Vertex n) {
    if (q.k < 1) throw std::invalid_argument("query: k must be >= 1");
    if (q.kind == SubgraphKind::Matching) {
        if (2ull * q.k > n)
            throw std::invalid_argument("query: matching needs 2k <= n");
    } else {
        if (q.k > n)
            throw std::invalid_argument("query: clique/tree needs k <= n");
    }
}

std::string kind_name(SubgraphKind kind) {
    switch (kind) {
        case SubgraphKind::Matching: return "matching";
        case SubgraphKind::Clique: return "clique";
        case SubgraphKind::Tree: return "tree";
    }
    return "?";
}

std::string chromatic_name(Chromatic c) {
    return c == Chromatic::Mono ? "mono" : "hetero";
}

std::string property_label(const PropertyQuery& q) {
    return chromatic_name(q.chromatic) + "-" + kind_name(q.kind);
}

std::optional<PropertyQuery> parse_property_label(const std::string& label, std::uint32_t k) {
    PropertyQuery q;
    q.k = k;
    const auto dash = label.find('-');
    if (dash == std::string::npos) return std::nullopt;
    const std::string chrom = label.substr(0, dash);
    const std::string kind = label.substr(dash + 1);
    if (chrom == "mono") q.chromatic = Chromatic::Mono;
    else if (chrom == "hetero") q.chromatic = Chromatic::Hetero;
    else return std::nullopt;
    if (kind == "matching") q.kind = SubgraphKind::Matching;
    else if (kind == "clique") q.kind = SubgraphKind::Clique;
    else if (kind == "tree") q.kind = SubgraphKind::Tree;
    else return std::nullopt;
    return q;
}

} // namespace chromathresh
